#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "depcm/harness/analysis.hpp"
#include "depcm/pcm/methods.hpp"
#include "depcm/pcm/registry.hpp"
#include "depcm/rng.hpp"
#include "depcm/stats.hpp"

namespace depcm::checks {

using namespace depcm::pcm;

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

bool same(ControlParameters a, ControlParameters b) { return a.F == b.F && a.C == b.C; }

struct Trace {
    std::vector<double> values;
};

// One synthetic run of a method. Objective values and outcomes come from a
// separate stream so the method's own stream is untouched by the driver.
void simulate(const std::string& id, std::size_t generations, std::uint64_t seed, Report* report, Trace* trace) {
    constexpr std::size_t n = 20;
    const int t_max = static_cast<int>(generations);
    auto pcm = create(id);
    Rng rng(derive_seed(seed, 1));
    Rng aux(derive_seed(seed, 2));
    pcm->initialize(n, t_max, {}, rng);
    const auto& p = pcm->hyperparams();
    auto hp = [&](const char* name) { return p.at(name); };

    auto fail = [&](std::size_t t, const std::string& what) {
        if (report) report->fail(id + " t=" + std::to_string(t) + ": " + what);
    };

    std::vector<ControlParameters> previous(n);
    std::vector<bool> previous_success(n, false);
    std::size_t inherited_failures = 0, failure_cases = 0;
    double last_detvsf_F = 2.0;

    for (std::size_t t = 1; t <= generations; ++t) {
        std::vector<double> f(n);
        const auto mode = aux.index(10);
        for (auto& v : f) {
            if (mode == 0) v = 1.0;
            else if (mode == 1) v = aux.uniform(-10.0, -1.0);
            else if (mode == 2) v = aux.uniform(-1.0, 1.0);
            else v = aux.uniform(0.0, 100.0);
        }
        const auto ctx = GenerationContext::from_values(f, static_cast<int>(t), t_max);
        pcm->begin_generation(ctx, rng);

        auto* cde = dynamic_cast<CdeControl*>(pcm.get());
        if (cde && report) {
            const auto s = cde->probabilities();
            double sum = 0.0;
            for (double v : s) sum += v;
            if (std::abs(sum - 1.0) > 1e-12) fail(t, "cDE probabilities sum to " + fmt(sum));
        }

        std::vector<ControlParameters> used(n);
        std::vector<std::size_t> bases(n);
        for (std::size_t i = 0; i < n; ++i) {
            bases[i] = aux.index(n);
            used[i] = pcm->sample(i, bases[i], rng);
        }
        if (trace)
            for (const auto& u : used) {
                trace->values.push_back(u.F);
                trace->values.push_back(u.C);
            }

        if (report) {
            ++report->cases;
            for (std::size_t i = 0; i < n; ++i) {
                const auto [F, C] = used[i];
                if (!std::isfinite(F) || !std::isfinite(C)) {
                    fail(t, "non-finite parameter");
                    continue;
                }
                if (id == "sade") {
                    if (!in_unit(C)) fail(t, "C outside [0,1]: " + fmt(C));
                } else if (id == "swde") {
                    if (F != 0.5 && F != 2.0) fail(t, "F not in {0.5, 2}: " + fmt(F));
                    if (C != 0.0 && C != 1.0) fail(t, "C not in {0, 1}: " + fmt(C));
                } else if (!in_unit(F) || !in_unit(C)) {
                    fail(t, "parameter outside [0,1]: F=" + fmt(F) + " C=" + fmt(C));
                }
                if (id == "f05c09" && !(F == 0.5 && C == 0.9)) fail(t, "fixed pair changed");
                if (id == "dersf" && (F < hp("F_min") || F > hp("F_max") || C != hp("C")))
                    fail(t, "dersf value outside its range");
                if (id == "zmde" && (C < hp("C_min") || C > hp("C_max"))) fail(t, "zmde C outside [C_min, C_max]");
                if (id == "depd" && (F < hp("F_min") || C != hp("C"))) fail(t, "depd value outside its range");
                if (id == "code") {
                    bool found = false;
                    for (const auto& q : CodeControl::pairs) found = found || same(q, used[i]);
                    if (!found) fail(t, "code pair not in the pool");
                }
                if (id == "epsde" &&
                    (std::find(EpsdeControl::f_pool.begin(), EpsdeControl::f_pool.end(), F) == EpsdeControl::f_pool.end() ||
                     std::find(EpsdeControl::c_pool.begin(), EpsdeControl::c_pool.end(), C) == EpsdeControl::c_pool.end()))
                    fail(t, "epsde pair off the grid");
                if (auto* dedps = dynamic_cast<DedpsControl*>(pcm.get())) {
                    bool found = false;
                    for (auto k : dedps->active()) found = found || same(DedpsControl::pair(k), used[i]);
                    if (!found) fail(t, "dedps pair not in the active pool");
                }
            }
            if (id == "detvsf") {
                if (used[0].F > last_detvsf_F) fail(t, "detvsf F increased");
                last_detvsf_F = used[0].F;
            }
            if (id == "rde") {
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        if (ctx.ranks[bases[a]] < ctx.ranks[bases[b]] &&
                            (used[a].F > used[b].F || used[a].C < used[b].C))
                            fail(t, "rde parameters not monotone in rank");
            }
            if (id == "epsde" || id == "cobide") {
                if (t > 1)
                    for (std::size_t i = 0; i < n; ++i) {
                        if (previous_success[i] && !same(previous[i], used[i]))
                            fail(t, "pair not kept after a success");
                        if (!previous_success[i]) {
                            ++failure_cases;
                            if (same(previous[i], used[i])) ++inherited_failures;
                        }
                    }
            }
        }

        const bool all_fail = t % 7 == 0;
        std::vector<TrialOutcome> outcomes(n);
        bool any_success = false;
        for (std::size_t i = 0; i < n; ++i) {
            const bool success = !all_fail && aux.uniform() < 0.4;
            const double delta = aux.uniform(0.0, 1.0);
            const double f_trial = success ? f[i] - delta : f[i] + 1.0 + delta;
            outcomes[i] = TrialOutcome::make(f[i], f_trial, used[i]);
            any_success = any_success || outcomes[i].success;
        }

        for (std::size_t i = 0; i < n; ++i) {
            auto* jde = dynamic_cast<JdeFamilyControl*>(pcm.get());
            auto* sde = dynamic_cast<SdeControl*>(pcm.get());
            const ControlParameters before_jde = jde ? jde->stored(i) : ControlParameters{};
            const double before_sde = sde ? sde->stored_F(i) : 0.0;
            const std::size_t resets_before = cde ? cde->reset_count() : 0;

            pcm->report(i, outcomes[i], rng);

            if (!report) continue;
            if (jde) {
                const auto after = jde->stored(i);
                if (outcomes[i].success && !same(after, used[i])) fail(t, "successful trial parameters not inherited");
                if (!outcomes[i].success && !same(after, before_jde)) fail(t, "stored parameters changed after a failure");
            }
            if (sde) {
                const double after = sde->stored_F(i);
                if (outcomes[i].success && after != used[i].F) fail(t, "successful F not inherited");
                if (!outcomes[i].success && after != before_sde) fail(t, "stored F changed after a failure");
            }
            if (cde) {
                const auto s = cde->probabilities();
                double sum = 0.0;
                for (double v : s) sum += v;
                if (std::abs(sum - 1.0) > 1e-12) fail(t, "cDE probabilities sum to " + fmt(sum));
                if (cde->reset_count() != resets_before)
                    for (double v : s)
                        if (std::abs(v - 1.0 / 9.0) > 1e-15) fail(t, "cDE probabilities not uniform after reset");
                for (double v : s)
                    if (v < hp("delta")) fail(t, "cDE probability below delta survived a report");
            }
        }

        auto* success_set = dynamic_cast<SuccessSetControl*>(pcm.get());
        auto* shade = dynamic_cast<ShadeControl*>(pcm.get());
        const double mu_f_before = success_set ? success_set->mu_F() : 0.0;
        const double mu_c_before = success_set ? success_set->mu_C() : 0.0;
        const auto mf_before = shade ? shade->memory_F() : std::vector<double>{};
        const auto mc_before = shade ? shade->memory_C() : std::vector<double>{};
        const std::size_t k_before = shade ? shade->write_index() : 0;

        pcm->end_generation(rng);

        if (report) {
            if (success_set) {
                if (!any_success && (success_set->mu_F() != mu_f_before || success_set->mu_C() != mu_c_before))
                    fail(t, "means moved in a generation without successes");
                if (!in_unit(success_set->mu_F()) || !in_unit(success_set->mu_C())) fail(t, "mean left [0,1]");
            }
            if (shade) {
                const std::size_t h = shade->memory_F().size();
                const std::size_t expected_k = any_success ? (k_before + 1) % h : k_before;
                if (shade->write_index() != expected_k) fail(t, "SHADE index not cyclic");
                for (std::size_t c = 0; c < h; ++c) {
                    const bool may_change = any_success && c == k_before;
                    if (!may_change && (shade->memory_F()[c] != mf_before[c] || shade->memory_C()[c] != mc_before[c]))
                        fail(t, "SHADE cell " + std::to_string(c) + " changed out of turn");
                }
            }
            if (auto* sade = dynamic_cast<SadeControl*>(pcm.get())) {
                if (sade->window().size() > static_cast<std::size_t>(hp("t_learn"))) fail(t, "SaDE window too long");
                if (!in_unit(sade->mu_C())) fail(t, "SaDE mu_C left [0,1]");
            }
            if (auto* sansde = dynamic_cast<SansdeControl*>(pcm.get())) {
                if (!in_unit(sansde->normal_probability()) || !in_unit(sansde->mu_C()))
                    fail(t, "SaNSDE state left [0,1]");
            }
            if (auto* fdsade = dynamic_cast<FdsadeControl*>(pcm.get())) {
                if (fdsade->regeneration_probability() < 0.0 || fdsade->regeneration_probability() > hp("K"))
                    fail(t, "FDSADE probability outside [0, K]");
            }
            if (auto* dedps = dynamic_cast<DedpsControl*>(pcm.get())) {
                std::size_t expected = 63;
                for (std::size_t k = 1; k <= 4; ++k)
                    if (t >= 50 * k) expected -= expected / 2;
                if (dedps->active().size() != expected)
                    fail(t, "DEDPS pool holds " + std::to_string(dedps->active().size()) + " pairs, expected " +
                                std::to_string(expected));
            }
        }
        previous = used;
        for (std::size_t i = 0; i < n; ++i) previous_success[i] = outcomes[i].success;
    }
    if (report && id == "epsde" && failure_cases > 0 &&
        static_cast<double>(inherited_failures) / static_cast<double>(failure_cases) > 0.05)
        report->fail(id + ": pairs kept after failures too often");
}

} // namespace

Report catalog_properties(std::size_t generations, std::uint64_t seed) {
    Report report;
    const auto ids = runnable_ids();
    for (std::size_t k = 0; k < ids.size(); ++k) {
        const auto& id = ids[k];
        const auto method_seed = derive_seed(seed, k);
        simulate(id, generations, method_seed, &report, nullptr);
        Trace a, b;
        const std::size_t short_run = std::min<std::size_t>(generations, 300);
        simulate(id, short_run, method_seed, nullptr, &a);
        simulate(id, short_run, method_seed, nullptr, &b);
        if (a.values != b.values) report.fail(id + ": equal seeds gave different parameter traces");
    }
    // rank locations used by IDE must grow with the rank
    for (std::size_t n : {2, 10, 100})
        for (std::size_t r = 1; r < n; ++r)
            if (!(IdeControl::rank_fraction(r, n) < IdeControl::rank_fraction(r + 1, n)))
                report.fail("ide: rank location not increasing at rank " + std::to_string(r));
    return report;
}

Report worked_examples() {
    Report report;
    auto expect = [&](bool ok, const std::string& what) {
        ++report.cases;
        if (!ok) report.fail(what);
    };

    // SaDE: window {0.1,0.2},{0.3},{0.4,0.5,0.6,0.7} -> mu_C = 0.4
    {
        auto pcm = create("sade");
        auto* sade = dynamic_cast<SadeControl*>(pcm.get());
        Rng rng(1);
        pcm->initialize(4, 100, {{"t_learn", 3}}, rng);
        const std::vector<std::vector<double>> gens{{0.1, 0.2}, {0.3}, {0.4, 0.5, 0.6, 0.7}};
        for (const auto& successes : gens) {
            for (std::size_t i = 0; i < 4; ++i) {
                const bool ok = i < successes.size();
                pcm->report(i, TrialOutcome::make(1.0, ok ? 0.5 : 2.0, {0.5, ok ? successes[i] : 0.99}), rng);
            }
            expect(sade->mu_C() == 0.5, "SaDE mu_C moved before the learning period ended");
            pcm->end_generation(rng);
        }
        expect(sade->mu_C() == 0.4, "SaDE window median is " + fmt(sade->mu_C()) + ", expected 0.4");
        std::deque<std::vector<double>> window(gens.begin(), gens.end());
        expect(SadeControl::median_of_window(window) == 0.4, "SaDE median_of_window");
    }

    // RDE boundaries with the recommended settings
    {
        const auto best = RdeControl::for_rank(1, 100, 0.6, 0.95, 0.85, 0.95);
        const auto worst = RdeControl::for_rank(100, 100, 0.6, 0.95, 0.85, 0.95);
        expect(best.F == 0.6 && best.C == 0.95, "RDE j=1 gives (" + fmt(best.F) + ", " + fmt(best.C) + ")");
        expect(worst.F == 0.95 && worst.C == 0.85, "RDE j=N gives (" + fmt(worst.F) + ", " + fmt(worst.C) + ")");
        const auto single = RdeControl::for_rank(1, 1, 0.6, 0.95, 0.85, 0.95);
        expect(single.F == 0.6 && single.C == 0.95, "RDE N=1 guard");

        auto pcm = create("rde");
        Rng rng(2);
        pcm->initialize(5, 10, {}, rng);
        const std::vector<double> f{3.0, 1.0, 5.0, 2.0, 4.0};
        pcm->begin_generation(GenerationContext::from_values(f, 1, 10), rng);
        const auto from_best = pcm->sample(0, 1, rng);
        const auto from_worst = pcm->sample(0, 2, rng);
        expect(from_best.F == 0.6 && from_best.C == 0.95, "RDE uses the base vector's rank (best)");
        expect(from_worst.F == 0.95 && from_worst.C == 0.85, "RDE uses the base vector's rank (worst)");
    }

    // CoDE: exactly the three pairs, each drawn about a third of the time
    {
        const std::set<std::pair<double, double>> expected{{1.0, 0.1}, {1.0, 0.9}, {0.8, 0.2}};
        std::set<std::pair<double, double>> listed;
        for (const auto& q : CodeControl::pairs) listed.insert({q.F, q.C});
        expect(listed == expected, "CoDE pool differs from {(1,0.1),(1,0.9),(0.8,0.2)}");
        auto pcm = create("code");
        Rng rng(3);
        pcm->initialize(10, 10, {}, rng);
        std::map<std::pair<double, double>, int> counts;
        const int draws = 100000;
        for (int k = 0; k < draws; ++k) {
            const auto q = pcm->sample(0, 0, rng);
            counts[{q.F, q.C}]++;
        }
        expect(counts.size() == 3, "CoDE produced a pair outside its pool");
        for (const auto& [q, c] : counts)
            expect(std::abs(c / double(draws) - 1.0 / 3.0) < 0.01, "CoDE pair frequency " + fmt(c / double(draws)));
    }

    // EPSDE pools
    {
        const std::vector<double> f_pool(EpsdeControl::f_pool.begin(), EpsdeControl::f_pool.end());
        const std::vector<double> c_pool(EpsdeControl::c_pool.begin(), EpsdeControl::c_pool.end());
        expect(f_pool == std::vector<double>{0.4, 0.5, 0.6, 0.7, 0.8, 0.9}, "EPSDE F pool");
        expect(c_pool == std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}, "EPSDE C pool");
        auto pcm = create("epsde");
        Rng rng(4);
        pcm->initialize(20000, 10, {}, rng);
        std::set<std::pair<double, double>> seen;
        for (std::size_t i = 0; i < 20000; ++i) {
            const auto q = pcm->sample(i, i, rng);
            seen.insert({q.F, q.C});
        }
        std::set<std::pair<double, double>> grid;
        for (double F : f_pool)
            for (double C : c_pool) grid.insert({F, C});
        expect(seen == grid, "EPSDE draws do not cover exactly the 6x9 grid");
    }

    // SWDE extremes
    {
        auto pcm = create("swde");
        Rng rng(5);
        pcm->initialize(10, 10, {}, rng);
        std::map<std::pair<double, double>, int> counts;
        const int draws = 100000;
        for (int k = 0; k < draws; ++k) {
            const auto q = pcm->sample(0, 0, rng);
            counts[{q.F, q.C}]++;
        }
        const std::set<std::pair<double, double>> expected{{0.5, 0.0}, {0.5, 1.0}, {2.0, 0.0}, {2.0, 1.0}};
        std::set<std::pair<double, double>> seen;
        for (const auto& [q, c] : counts) {
            seen.insert(q);
            expect(std::abs(c / double(draws) - 0.25) < 0.01, "SWDE combination frequency " + fmt(c / double(draws)));
        }
        expect(seen == expected, "SWDE values outside {0.5,2}x{0,1}");
    }

    // DETVSF endpoints
    {
        expect(DetvsfControl::scale_factor_at(100, 100, 0.4, 1.2) == 0.4, "DETVSF F at t_max");
        expect(DetvsfControl::scale_factor_at(0, 100, 0.4, 1.2) == 1.2, "DETVSF F at t=0");
        expect(DetvsfControl::scale_factor_at(50, 100, 0.4, 1.2) == 0.8, "DETVSF F at t_max/2");
        auto pcm = create("detvsf");
        Rng rng(6);
        pcm->initialize(10, 100, {}, rng);
        const std::vector<double> f(10, 1.0);
        pcm->begin_generation(GenerationContext::from_values(f, 100, 100), rng);
        const auto last = pcm->sample(0, 0, rng);
        expect(last.F == 0.4 && last.C == 0.9, "DETVSF delivered pair at t_max");
        pcm->begin_generation(GenerationContext::from_values(f, 50, 100), rng);
        expect(pcm->sample(0, 0, rng).F == 0.8, "DETVSF delivered F at t_max/2");
    }
    return report;
}

Report mean_oracles(std::size_t sets, std::uint64_t seed, double tolerance) {
    Report report;
    Rng rng(seed);
    for (std::size_t k = 0; k < sets; ++k) {
        const std::size_t n = 1 + rng.index(30);
        std::vector<double> s(n), w(n);
        for (auto& v : s) v = rng.uniform() < 0.05 ? 0.0 : rng.uniform();
        for (auto& v : w) v = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, 10.0);
        if (k % 10 == 0) s[0] = 0.5; // keep some sets with a nonzero sum
        ++report.cases;

        long double sum = 0, sum_sq = 0, sum_pow = 0, w_sum = 0, w_dot = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long double v = s[i];
            sum += v;
            sum_sq += v * v;
            sum_pow += std::pow(v, 1.5L);
            w_sum += std::fabs(static_cast<long double>(w[i]));
        }
        for (std::size_t i = 0; i < n; ++i) w_dot += std::fabs(static_cast<long double>(w[i])) / w_sum * s[i];
        const auto close = [&](double got, long double want) {
            return std::abs(static_cast<long double>(got) - want) <= tolerance;
        };

        if (sum > 0) {
            const long double want = sum_sq / sum;
            const double got = stats::lehmer_mean(s);
            if (!close(got, want)) report.fail("lehmer_mean set " + std::to_string(k) + ": " + fmt(got));
        } else {
            bool threw = false;
            try {
                stats::lehmer_mean(s);
            } catch (const std::domain_error&) {
                threw = true;
            }
            if (!threw) report.fail("lehmer_mean of an all-zero set did not throw");
        }
        const long double want_pow = std::pow(sum_pow / n, 1.0L / 1.5L);
        if (!close(stats::power_mean(s), want_pow)) report.fail("power_mean set " + std::to_string(k));
        const long double want_w = w_sum > 0 ? w_dot : sum / n;
        if (!close(stats::weighted_mean(s, w), want_w)) report.fail("weighted_mean set " + std::to_string(k));
    }
    return report;
}

namespace {

// doubled midranks by direct counting
std::vector<long> doubled_midranks(const std::vector<double>& pooled) {
    std::vector<long> r(pooled.size());
    for (std::size_t i = 0; i < pooled.size(); ++i) {
        long less = 0, equal = 0;
        for (double v : pooled) {
            less += v < pooled[i];
            equal += v == pooled[i];
        }
        r[i] = 2 * less + equal + 1;
    }
    return r;
}

double plain_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto m = v.size();
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

} // namespace

Report rank_sum_oracle(std::size_t cases, std::uint64_t seed) {
    Report report;
    Rng rng(seed);
    const double alpha = 0.05;
    std::size_t significant = 0;
    for (std::size_t k = 0; k < cases; ++k) {
        const std::size_t na = 2 + rng.index(4), nb = 2 + rng.index(4);
        const bool ties = rng.uniform() < 0.5;
        const double shift = rng.uniform(0.0, 3.0);
        std::vector<double> a(na), b(nb);
        for (auto& v : a) v = ties ? static_cast<double>(rng.index(5)) : rng.uniform();
        for (auto& v : b) v = ties ? static_cast<double>(rng.index(5)) + std::floor(shift) : rng.uniform() + shift;

        std::vector<double> pooled = a;
        pooled.insert(pooled.end(), b.begin(), b.end());
        const auto ranks = doubled_midranks(pooled);
        const std::size_t n = na + nb;
        long observed = 0;
        for (std::size_t i = 0; i < na; ++i) observed += ranks[i];
        const long expected = static_cast<long>(na * (n + 1)); // doubled
        const long gap = std::labs(observed - expected);

        long total = 0, extreme = 0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != na) continue;
            long s = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1u) s += ranks[i];
            ++total;
            if (std::labs(s - expected) >= gap) ++extreme;
        }
        bool all_equal = std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled[0]; });
        const double p = all_equal ? 1.0 : static_cast<double>(extreme) / static_cast<double>(total);
        auto outcome = stats::Comparison::no_difference;
        if (p < alpha) {
            const double ma = plain_median(a), mb = plain_median(b);
            const bool a_wins = ma != mb ? ma < mb : observed < expected;
            outcome = a_wins ? stats::Comparison::a_better : stats::Comparison::b_better;
            ++significant;
        }

        const auto got = stats::rank_sum_test(a, b, alpha);
        ++report.cases;
        if (std::abs(got.p_value - p) > 1e-12 || got.outcome != outcome)
            report.fail("case " + std::to_string(k) + " (" + std::to_string(na) + "," + std::to_string(nb) +
                        "): p=" + fmt(got.p_value) + " vs " + fmt(p) + ", outcome " +
                        std::string(stats::to_string(got.outcome)) + " vs " + std::string(stats::to_string(outcome)));
    }
    if (significant == 0) report.fail("no significant case generated; the oracle did not exercise the direction rule");
    return report;
}

Report pipeline_examples() {
    using harness::RunTrajectory;
    Report report;
    auto expect = [&](bool ok, const std::string& what) {
        ++report.cases;
        if (!ok) report.fail(what);
    };
    auto trajectory = [](std::size_t dim, auto hit_at) {
        RunTrajectory t;
        t.dimension = dim;
        for (std::size_t k = 0; k < harness::target_count; ++k) t.target_hits[k] = hit_at(k);
        return t;
    };
    const std::vector<double> axis{1.0, 10.0, 100.0};

    // 26 of 51 targets hit by 10 * D evaluations
    {
        const auto t = trajectory(5, [](std::size_t k) -> std::int64_t { return k < 26 ? 50 : -1; });
        const auto curve = harness::ecdf(std::vector<RunTrajectory>{t}, axis);
        expect(curve[0] == 0.0, "ecdf before any hit");
        expect(curve[1] == 26.0 / 51.0, "ecdf 26/51 case gives " + fmt(curve[1]));
        expect(curve[2] == 26.0 / 51.0, "ecdf stays at 26/51");
    }
    // perfect hitter and a run that hits nothing
    {
        const auto perfect = trajectory(3, [](std::size_t) -> std::int64_t { return 1; });
        const auto none = trajectory(3, [](std::size_t) -> std::int64_t { return -1; });
        const auto one = harness::ecdf(std::vector<RunTrajectory>{perfect}, axis);
        const auto zero = harness::ecdf(std::vector<RunTrajectory>{none}, axis);
        expect(std::all_of(one.begin(), one.end(), [](double v) { return v == 1.0; }), "perfect hitter is not 1");
        expect(std::all_of(zero.begin(), zero.end(), [](double v) { return v == 0.0; }), "no hits is not 0");
        const auto mixed = harness::ecdf(std::vector<RunTrajectory>{perfect, none}, axis);
        expect(mixed[0] == 0.5, "two runs, one perfect: 51/102");
    }
    // staggered hits: target k first reached at (k + 1) * D evaluations, D = 2
    {
        const auto t = trajectory(2, [](std::size_t k) -> std::int64_t { return static_cast<std::int64_t>(2 * (k + 1)); });
        const auto curve = harness::ecdf(std::vector<RunTrajectory>{t}, std::vector<double>{1.0, 7.5, 51.0});
        expect(curve[0] == 1.0 / 51.0 && curve[1] == 7.0 / 51.0 && curve[2] == 1.0, "staggered ecdf");
    }

    // APS
    {
        std::vector<double> low{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, mid, high;
        for (double v : low) {
            mid.push_back(v + 100);
            high.push_back(v + 200);
        }
        const harness::ErrorTable three{{low, low}, {mid, mid}, {high, high}};
        const auto a = harness::aps(three);
        expect(a[0] == 0.0 && a[1] == 0.5 && a[2] == 1.0, "APS of a strict ordering gives " + fmt(a[0]) + ", " +
                                                               fmt(a[1]) + ", " + fmt(a[2]));
        const harness::ErrorTable tied{{low}, {low}, {low}, {low}};
        const auto z = harness::aps(tied);
        expect(std::all_of(z.begin(), z.end(), [](double v) { return v == 0.0; }), "indistinguishable APS not 0");
        // two problems: algorithm 2 is worst on one and tied on the other
        const harness::ErrorTable split{{low, low}, {low, low}, {high, low}};
        const auto s = harness::aps(split);
        expect(s[2] == 0.5 && s[0] == 0.0 && s[1] == 0.0, "APS averaged over problems");
    }
    return report;
}

} // namespace depcm::checks
