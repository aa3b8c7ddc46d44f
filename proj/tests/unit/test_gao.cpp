#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "depcm/gao.hpp"

using namespace depcm;
using namespace depcm::gao;

namespace {

// members on the unit circle around the optimum of a 2-D sphere
core::Population ring(const problems::Problem& p, std::size_t n) {
    core::Population pop;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = 2.0 * 3.141592653589793 * static_cast<double>(k) / static_cast<double>(n);
        std::vector<double> x{p.x_opt[0] + std::cos(a), p.x_opt[1] + std::sin(a)};
        const double f = p.evaluate(x);
        pop.members.push_back({x, f, 0, 0});
    }
    pop.archive_cap = n;
    return pop;
}

} // namespace

TEST_CASE("oracle configuration") {
    OracleConfig c;
    CHECK(c.candidates == 100);
    CHECK(c.repeats == 10);
    c.candidates = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("oracle step picks the lowest mean score") {
    const auto p = problems::make_problem(problems::Function::sphere, 2, 4);
    const auto pop = ring(p, 10);
    Rng rng(21);
    OracleConfig cfg;
    cfg.candidates = 30;
    cfg.repeats = 4;
    for (int rep = 0; rep < 20; ++rep) {
        const auto step = oracle_step(pop, static_cast<std::size_t>(rep) % 10, cfg, p, rng);
        REQUIRE(step.scores.size() == 30);
        CHECK(step.probes == 120);
        const auto best = std::min_element(step.scores.begin(), step.scores.end()) - step.scores.begin();
        CHECK(step.selected == static_cast<std::size_t>(best));
        const double mean = std::accumulate(step.scores.begin(), step.scores.end(), 0.0) / 30.0;
        CHECK(step.scores[step.selected] <= mean);
        CHECK(step.F == step.pairs[step.selected].first);
        CHECK(step.C == step.pairs[step.selected].second);
        CHECK(step.f_trial == p.evaluate(step.trial));
    }
}

TEST_CASE("a single candidate is a random parameter pair") {
    const auto p = problems::make_problem(problems::Function::sphere, 2, 4);
    const auto pop = ring(p, 10);
    Rng rng(22);
    OracleConfig cfg;
    cfg.candidates = 1;
    cfg.repeats = 1;
    double sum_f = 0.0;
    const int n = 2000;
    for (int k = 0; k < n; ++k) {
        const auto step = oracle_step(pop, 0, cfg, p, rng);
        CHECK(step.selected == 0);
        CHECK(step.probes == 1);
        sum_f += step.F;
    }
    CHECK(sum_f / n == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("charged evaluations exclude probes") {
    harness::RunConfig cfg;
    cfg.problem = std::make_shared<const problems::Problem>(problems::make_problem(problems::Function::sphere, 3, 2));
    cfg.budget = 400;
    OracleConfig ocfg;
    ocfg.candidates = 5;
    ocfg.repeats = 3;
    const auto t = gaode_run(cfg, ocfg);
    const std::int64_t n = static_cast<std::int64_t>(cfg.resolved_population());
    const std::int64_t committed = t.evaluations - n;
    CHECK(t.evaluations <= 400);
    // every committed trial cost K R probes, one of which is charged
    CHECK(t.probe_evaluations == n + committed * 15);

    cfg.ops = core::OperatorConfig::parse("best/1/bin");
    CHECK_THROWS_AS(gaode_run(cfg, ocfg), ConfigError);
}

TEST_CASE("oracle is at least as fast as the fixed baseline on the sphere") {
    harness::RunConfig cfg;
    cfg.problem = std::make_shared<const problems::Problem>(problems::make_problem(problems::Function::sphere, 5, 2));
    cfg.budget = 20000;
    OracleConfig ocfg;
    ocfg.candidates = 20;
    ocfg.repeats = 3;
    std::vector<double> oracle_hits, plain_hits;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        cfg.seed = s;
        const auto g = gaode_run(cfg, ocfg);
        const auto f = harness::run(cfg);
        oracle_hits.push_back(g.hit(harness::target_count - 1).value_or(1e18));
        plain_hits.push_back(f.hit(harness::target_count - 1).value_or(1e18));
    }
    std::sort(oracle_hits.begin(), oracle_hits.end());
    std::sort(plain_hits.begin(), plain_hits.end());
    CHECK(oracle_hits[2] < plain_hits[2]);
}
