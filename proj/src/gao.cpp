#include "depcm/gao.hpp"

#include <algorithm>

namespace depcm::gao {

namespace {

const core::OperatorConfig rand_1_bin{core::Mutation::rand_1, core::Crossover::bin, 0.05, std::nullopt};

void require_rand_1_bin(const core::OperatorConfig& ops) {
    if (ops.mutation != core::Mutation::rand_1 || ops.crossover != core::Crossover::bin)
        throw ConfigError("the oracle supports only rand/1/bin, got " + ops.name());
}

} // namespace

void OracleConfig::validate() const {
    if (candidates < 1) throw ConfigError("oracle needs at least one candidate");
    if (repeats < 1) throw ConfigError("oracle needs at least one repeat");
}

OracleStep oracle_step(const core::Population& pop, std::size_t i, const OracleConfig& ocfg,
                       const problems::Problem& problem, Rng& rng) {
    ocfg.validate();
    const std::size_t k_count = ocfg.candidates;
    const std::size_t dim = pop.dimension();
    const auto pool = core::DonorPool::build(pop);
    const auto& parent = pop.members[i].x;

    OracleStep step;
    step.pairs.reserve(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        const double F = rng.uniform();
        const double C = rng.uniform();
        step.pairs.emplace_back(F, C);
    }
    step.scores.assign(k_count, 0.0);

    std::vector<std::vector<double>> first_trials(k_count);
    std::vector<double> first_f(k_count);
    for (std::size_t r = 0; r < ocfg.repeats; ++r) {
        const auto donors = core::select_donors(pop, pool, i, rand_1_bin, rng);
        const auto draws = core::BinomialDraws::draw(dim, rng);
        for (std::size_t k = 0; k < k_count; ++k) {
            const auto [F, C] = step.pairs[k];
            auto mutant = core::repair_bounds(core::build_mutant(pop, donors, F, core::Mutation::rand_1), parent,
                                              problem.bounds);
            auto trial = core::apply_binomial(parent, mutant, C, draws);
            const double f = problem.evaluate(trial);
            ++step.probes;
            step.scores[k] += ocfg.score == OracleScore::survivor ? std::min(f, pop.members[i].f) : f;
            if (r == 0) {
                first_trials[k] = std::move(trial);
                first_f[k] = f;
            }
        }
    }
    for (auto& s : step.scores) s /= static_cast<double>(ocfg.repeats);

    std::size_t best = 0;
    for (std::size_t k = 1; k < k_count; ++k)
        if (step.scores[k] < step.scores[best]) best = k;
    step.selected = best;
    step.F = step.pairs[best].first;
    step.C = step.pairs[best].second;
    step.trial = std::move(first_trials[best]);
    step.f_trial = first_f[best];
    return step;
}

OracleTrialSource::OracleTrialSource(const harness::RunConfig& cfg, OracleConfig ocfg)
    : cfg_(cfg), ocfg_(ocfg) {
    require_rand_1_bin(cfg.ops);
    ocfg_.validate();
}

harness::TrialProposal OracleTrialSource::propose(const core::Population& pop, const core::DonorPool&,
                                                  std::size_t i, Rng& rng) {
    auto step = oracle_step(pop, i, ocfg_, *cfg_.problem, rng);
    extra_ += step.probes - 1;
    return {std::move(step.trial), {step.F, step.C}, step.f_trial};
}

harness::RunTrajectory gaode_run(const harness::RunConfig& cfg, const OracleConfig& ocfg) {
    OracleTrialSource source(cfg, ocfg);
    return harness::run_with(cfg, source);
}

} // namespace depcm::gao
