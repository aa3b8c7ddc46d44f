#include "depcm/pcm/control.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "depcm/pcm/registry.hpp"

namespace depcm::pcm {

GenerationContext GenerationContext::from_values(std::span<const double> f, int t, int t_max) {
    GenerationContext ctx;
    ctx.t = t;
    ctx.t_max = t_max;
    ctx.f_values.assign(f.begin(), f.end());
    const std::size_t n = f.size();
    if (n == 0) return ctx;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    ctx.ranks.resize(n);
    for (std::size_t r = 0; r < n; ++r) ctx.ranks[order[r]] = r + 1;

    ctx.f_min = f[order.front()];
    ctx.f_max = f[order.back()];
    const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : f) var += (v - mean) * (v - mean);
    // keep f_min <= f_avg <= f_max under rounding
    ctx.f_avg = std::clamp(mean, ctx.f_min, ctx.f_max);
    ctx.f_std = std::sqrt(var / static_cast<double>(n));
    return ctx;
}

GenerationContext GenerationContext::build(std::span<const core::Individual> members, int t, int t_max) {
    std::vector<double> f(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) f[i] = members[i].f;
    auto ctx = from_values(f, t, t_max);
    ctx.members = members;
    return ctx;
}

void ParameterControl::initialize(std::size_t population_size, int t_max, const Hyperparams& overrides, Rng& rng) {
    if (population_size == 0) throw ConfigError("population size must be positive");
    if (t_max < 1) throw ConfigError("t_max must be at least 1");
    params_ = resolve_hyperparams(*info_, overrides);
    n_ = population_size;
    t_max_ = t_max;
    reset(rng);
}

double ParameterControl::param(std::string_view name) const {
    const auto it = params_.find(name);
    if (it == params_.end()) throw ConfigError(info_->id + ": hyperparameter '" + std::string(name) + "' not defined");
    return it->second;
}

} // namespace depcm::pcm
