#include "depcm/pcm/methods.hpp"

namespace depcm::pcm {

void JdeFamilyControl::reset(Rng&) {
    stored_.assign(population_size(), ControlParameters{param("F_init"), param("C_init")});
    trial_ = stored_;
}

ControlParameters JdeFamilyControl::sample(std::size_t i, std::size_t, Rng& rng) {
    trial_[i] = make_trial(i, stored_[i], rng);
    return trial_[i];
}

void JdeFamilyControl::report(std::size_t i, const TrialOutcome& outcome, Rng&) {
    if (outcome.success) stored_[i] = trial_[i];
}

ControlParameters JdeControl::make_trial(std::size_t, ControlParameters current, Rng& rng) {
    ControlParameters trial = current;
    if (rng.uniform() < param("tau_F")) trial.F = rng.uniform(param("F_lower"), 1.0);
    if (rng.uniform() < param("tau_C")) trial.C = rng.uniform();
    return trial;
}

double FdsadeControl::fitness_diversity(const GenerationContext& ctx) {
    const double range = ctx.f_max - ctx.f_min;
    if (!(range > 0.0)) return 0.0;
    return ctx.f_std / range;
}

void FdsadeControl::begin_generation(const GenerationContext& ctx, Rng&) {
    probability_ = param("K") * (1.0 - fitness_diversity(ctx));
}

ControlParameters FdsadeControl::make_trial(std::size_t, ControlParameters current, Rng& rng) {
    ControlParameters trial = current;
    if (rng.uniform() < probability_) trial.F = rng.uniform(param("F_lower"), 1.0);
    if (rng.uniform() < probability_) trial.C = rng.uniform();
    return trial;
}

double IsadeControl::alpha(double f_i, double f_min, double f_avg) {
    const double spread = f_avg - f_min;
    if (!(spread > 0.0)) return 0.0;
    return (f_i - f_min) / spread;
}

void IsadeControl::begin_generation(const GenerationContext& ctx, Rng&) {
    f_ = ctx.f_values;
    f_min_ = ctx.f_min;
    f_avg_ = ctx.f_avg;
}

ControlParameters IsadeControl::make_trial(std::size_t i, ControlParameters current, Rng& rng) {
    ControlParameters trial = current;
    const double f_i = f_.empty() ? f_avg_ : f_[i];
    const bool below_average = f_i < f_avg_;
    const double a = alpha(f_i, f_min_, f_avg_);
    const double floor_F = param("F_lower");
    if (rng.uniform() < param("tau_F"))
        trial.F = below_average ? a * (current.F - floor_F) + floor_F : rng.uniform(floor_F, 1.0);
    if (rng.uniform() < param("tau_C")) trial.C = below_average ? a * current.C : rng.uniform();
    return {clamp_unit(trial.F), clamp_unit(trial.C)};
}

} // namespace depcm::pcm
