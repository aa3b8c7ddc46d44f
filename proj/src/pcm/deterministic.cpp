#include <cmath>
#include <numbers>

#include "depcm/pcm/methods.hpp"

namespace depcm::pcm {

void FixedControl::reset(Rng&) { fixed_ = {param("F"), param("C")}; }

ControlParameters DersfControl::sample(std::size_t, std::size_t, Rng& rng) {
    return {clamp_unit(rng.uniform(param("F_min"), param("F_max"))), clamp_unit(param("C"))};
}

double DetvsfControl::scale_factor_at(int t, int t_max, double f_min, double f_max) {
    return (f_max - f_min) * (static_cast<double>(t_max - t) / static_cast<double>(t_max)) + f_min;
}

void DetvsfControl::reset(Rng&) { current_ = {clamp_unit(param("F_max")), param("C")}; }

void DetvsfControl::begin_generation(const GenerationContext& ctx, Rng&) {
    current_.F = clamp_unit(scale_factor_at(ctx.t, ctx.t_max, param("F_min"), param("F_max")));
    current_.C = param("C");
}

ControlParameters SindeControl::values_at(int t, int t_max, double omega) {
    const double envelope = static_cast<double>(t) / static_cast<double>(t_max);
    const double phase = 2.0 * std::numbers::pi * omega * static_cast<double>(t);
    return {0.5 * (envelope * std::sin(phase) + 1.0), 0.5 * (envelope * std::sin(phase + std::numbers::pi) + 1.0)};
}

void SindeControl::reset(Rng&) { current_ = values_at(1, t_max(), param("omega")); }

void SindeControl::begin_generation(const GenerationContext& ctx, Rng&) {
    // t can run past t_max on the last partial generation; keep the envelope at 1
    current_ = values_at(ctx.t > ctx.t_max ? ctx.t_max : ctx.t, ctx.t_max, param("omega"));
}

ControlParameters ZmdeControl::sample(std::size_t, std::size_t, Rng& rng) {
    const double F = clamp_unit(rng.normal(param("F_mean"), param("F_var")));
    const double C = rng.uniform(param("C_min"), param("C_max"));
    return {F, C};
}

ControlParameters SwdeControl::sample(std::size_t, std::size_t, Rng& rng) {
    // F = 2 is one of the two intended extremes and is not clamped
    const double F = rng.index(2) == 0 ? 0.5 : 2.0;
    const double C = rng.index(2) == 0 ? 0.0 : 1.0;
    return {F, C};
}

} // namespace depcm::pcm
