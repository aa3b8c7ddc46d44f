#include <algorithm>
#include <cmath>
#include <numeric>

#include "depcm/pcm/methods.hpp"

namespace depcm::pcm {

// ---------------------------------------------------------------- cDE

ControlParameters CdeControl::pair(std::size_t k) {
    static constexpr double f_pool[] = {0.5, 0.8, 1.0};
    static constexpr double c_pool[] = {0.0, 0.5, 1.0};
    return {f_pool[k / 3], c_pool[k % 3]};
}

std::array<double, CdeControl::pool_size> CdeControl::selection_probabilities(std::span<const double> successes,
                                                                              double n0) {
    std::array<double, pool_size> s{};
    double total = 0.0;
    for (std::size_t k = 0; k < pool_size; ++k) total += successes[k] + n0;
    for (std::size_t k = 0; k < pool_size; ++k) s[k] = (successes[k] + n0) / total;
    return s;
}

std::array<double, CdeControl::pool_size> CdeControl::probabilities() const {
    return selection_probabilities(successes_, param("n0"));
}

void CdeControl::reset(Rng&) {
    successes_.fill(0.0);
    chosen_.assign(population_size(), 0);
    resets_ = 0;
}

ControlParameters CdeControl::sample(std::size_t i, std::size_t, Rng& rng) {
    const auto s = probabilities();
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t k = 0;
    for (; k + 1 < pool_size; ++k) {
        acc += s[k];
        if (u < acc) break;
    }
    chosen_[i] = k;
    return pair(k);
}

void CdeControl::report(std::size_t i, const TrialOutcome& outcome, Rng&) {
    if (!outcome.success) return;
    successes_[chosen_[i]] += 1.0;
    const auto s = probabilities();
    if (*std::min_element(s.begin(), s.end()) < param("delta")) {
        successes_.fill(0.0);
        ++resets_;
    }
}

// ---------------------------------------------------------------- EPSDE / CoBiDE

void InheritedPairControl::reset(Rng& rng) {
    pairs_.resize(population_size());
    for (auto& p : pairs_) p = draw_pair(rng);
}

void InheritedPairControl::report(std::size_t i, const TrialOutcome& outcome, Rng& rng) {
    if (!outcome.success) pairs_[i] = draw_pair(rng);
}

ControlParameters EpsdeControl::draw_pair(Rng& rng) {
    const double F = f_pool[rng.index(f_pool.size())];
    const double C = c_pool[rng.index(c_pool.size())];
    return {F, C};
}

double CobideControl::draw_mode(Rng& rng, double first, double second, int& component) {
    component = rng.uniform() < 0.5 ? 0 : 1;
    return rng.cauchy(component == 0 ? first : second, 0.1);
}

ControlParameters CobideControl::draw_pair(Rng& rng) {
    int component = 0;
    double F;
    for (;;) {
        F = draw_mode(rng, 0.65, 1.0, component);
        if (F > 1.0) {
            F = 1.0;
            break;
        }
        if (F > 0.0) break;
    }
    const double C = clamp_unit(draw_mode(rng, 0.1, 0.95, component));
    return {F, C};
}

// ---------------------------------------------------------------- DEDPS

ControlParameters DedpsControl::pair(std::size_t k) { return {f_pool[k / c_pool.size()], c_pool[k % c_pool.size()]}; }

void DedpsControl::reset(Rng&) {
    const std::size_t m = f_pool.size() * c_pool.size();
    active_.resize(m);
    std::iota(active_.begin(), active_.end(), std::size_t{0});
    succ_.assign(m, 0.0);
    total_.assign(m, 0.0);
    assigned_.assign(population_size(), 0);
    schedule_.clear();
    const int step = static_cast<int>(param("t_cs_step"));
    const int prunings = static_cast<int>(param("prunings"));
    for (int k = 1; k <= prunings; ++k) schedule_.push_back(step * k);
    t_ = 0;
}

void DedpsControl::begin_generation(const GenerationContext& ctx, Rng& rng) {
    t_ = ctx.t;
    std::vector<std::size_t> perm = active_;
    rng.shuffle(perm);
    for (std::size_t i = 0; i < assigned_.size(); ++i)
        assigned_[i] = i < perm.size() ? perm[i] : active_[rng.index(active_.size())];
}

ControlParameters DedpsControl::sample(std::size_t i, std::size_t, Rng&) { return pair(assigned_[i]); }

void DedpsControl::report(std::size_t i, const TrialOutcome& outcome, Rng&) {
    const std::size_t k = assigned_[i];
    total_[k] += 1.0;
    if (outcome.success) succ_[k] += 1.0;
}

std::vector<std::size_t> DedpsControl::prune(const std::vector<std::size_t>& active, std::span<const double> succ,
                                             std::span<const double> total) {
    std::vector<std::size_t> ranked = active;
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
        return score(succ[a], total[a]) > score(succ[b], total[b]);
    });
    ranked.resize(active.size() - active.size() / 2);
    return ranked;
}

void DedpsControl::end_generation(Rng&) {
    if (std::find(schedule_.begin(), schedule_.end(), t_) == schedule_.end() || active_.size() < 2) return;
    active_ = prune(active_, succ_, total_);
    std::fill(succ_.begin(), succ_.end(), 0.0);
    std::fill(total_.begin(), total_.end(), 0.0);
}

} // namespace depcm::pcm
