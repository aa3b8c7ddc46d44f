#include <algorithm>
#include <cmath>
#include <limits>

#include "depcm/pcm/methods.hpp"

namespace depcm::pcm {

// ---------------------------------------------------------------- DEPD

double DepdControl::scale_factor(double f_min, double f_max, double F_min) {
    if (f_min == 0.0 && f_max == 0.0) return F_min;
    // a zero denominator counts as an unbounded ratio, selecting the second branch
    const double ratio = f_min == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(f_max / f_min);
    if (ratio < 1.0) return std::max(F_min, 1.0 - ratio);
    return std::max(F_min, 1.0 - std::abs(f_min / f_max));
}

void DepdControl::reset(Rng&) { current_ = {param("F_min"), param("C")}; }

void DepdControl::begin_generation(const GenerationContext& ctx, Rng&) {
    current_ = {clamp_unit(scale_factor(ctx.f_min, ctx.f_max, param("F_min"))), param("C")};
}

// ---------------------------------------------------------------- RDE

ControlParameters RdeControl::for_rank(std::size_t j, std::size_t n, double f_min, double f_max, double c_min,
                                       double c_max) {
    const double frac = n > 1 ? static_cast<double>(j - 1) / static_cast<double>(n - 1) : 0.0;
    return {f_min + (f_max - f_min) * frac, c_max - (c_max - c_min) * frac};
}

ControlParameters RdeControl::sample(std::size_t, std::size_t base_index, Rng&) {
    const std::size_t j = ranks_.empty() ? 1 : ranks_[base_index];
    const auto p = for_rank(j, population_size(), param("F_min"), param("F_max"), param("C_min"), param("C_max"));
    return {clamp_unit(p.F), clamp_unit(p.C)};
}

// ---------------------------------------------------------------- IDE

double IdeControl::rank_fraction(std::size_t rank, std::size_t n) {
    return n > 1 ? static_cast<double>(rank) / static_cast<double>(n) : 0.0;
}

namespace {

double normal_inside_unit(Rng& rng, double mean, double variance) {
    for (;;) {
        const double v = rng.normal(mean, variance);
        if (v >= 0.0 && v <= 1.0) return v;
    }
}

} // namespace

ControlParameters IdeControl::sample(std::size_t i, std::size_t base_index, Rng& rng) {
    const std::size_t n = population_size();
    const std::size_t j = ranks_.empty() ? 1 : ranks_[base_index];
    const std::size_t own = ranks_.empty() ? 1 : ranks_[i];
    const double F = normal_inside_unit(rng, rank_fraction(j, n), 0.1);
    const double C = normal_inside_unit(rng, rank_fraction(own, n), 0.1);
    return {F, C};
}

// ---------------------------------------------------------------- SDE

double SdeControl::wrap(double x) {
    if (x >= 0.0 && x <= 1.0) return x;
    return x - std::floor(x);
}

void SdeControl::reset(Rng& rng) {
    if (population_size() < 3) throw ConfigError("sde: needs a population of at least 3");
    f_.resize(population_size());
    for (auto& F : f_) F = wrap(rng.normal(0.5, 0.15));
    trial_f_ = f_;
}

ControlParameters SdeControl::sample(std::size_t i, std::size_t, Rng& rng) {
    const std::size_t n = f_.size();
    const std::size_t r1 = rng.index(n);
    std::size_t r2, r3;
    do {
        r2 = rng.index(n);
    } while (r2 == r1);
    do {
        r3 = rng.index(n);
    } while (r3 == r1 || r3 == r2);
    trial_f_[i] = wrap(f_[r1] + rng.normal(0.0, 0.5) * (f_[r2] - f_[r3]));
    const double C = clamp_unit(rng.normal(0.5, 0.15));
    return {trial_f_[i], C};
}

void SdeControl::report(std::size_t i, const TrialOutcome& outcome, Rng&) {
    if (outcome.success) f_[i] = trial_f_[i];
}

} // namespace depcm::pcm
