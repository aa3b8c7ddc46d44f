#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depcm/core/population.hpp"
#include "depcm/rng.hpp"

namespace depcm::pcm {

using Hyperparams = std::map<std::string, double, std::less<>>;

struct ControlParameters {
    double F = 0.0;
    double C = 0.0;
};

/// Snapshot of the population handed to a method at the start of a generation.
struct GenerationContext {
    int t = 1;
    int t_max = 1;
    std::vector<double> f_values;
    std::vector<std::size_t> ranks; // ranks[i] in 1..N, 1 = best, ties by index
    double f_min = 0.0;
    double f_max = 0.0;
    double f_avg = 0.0;
    double f_std = 0.0; // population (1/N) standard deviation
    std::span<const core::Individual> members;

    static GenerationContext build(std::span<const core::Individual> members, int t, int t_max);
    static GenerationContext from_values(std::span<const double> f, int t, int t_max);
};

struct TrialOutcome {
    bool success = false; // f_trial <= f_parent
    double f_parent = 0.0;
    double f_trial = 0.0;
    double F_used = 0.0;
    double C_used = 0.0;

    static TrialOutcome make(double f_parent, double f_trial, ControlParameters used) {
        return {f_trial <= f_parent, f_parent, f_trial, used.F, used.C};
    }
};

struct PcmInfo;

/// Generation-synchronous parameter control.
///
/// Call order per generation: begin_generation, then sample for every member
/// (after the engine fixed the base vector), then report for every member,
/// then end_generation.
class ParameterControl {
public:
    explicit ParameterControl(const PcmInfo& info) : info_(&info) {}
    virtual ~ParameterControl() = default;

    /// Resolves hyperparameter overrides against the documented defaults and
    /// ranges (throws ConfigError) and resets all adaptive state.
    void initialize(std::size_t population_size, int t_max, const Hyperparams& overrides, Rng& rng);

    virtual void begin_generation(const GenerationContext&, Rng&) {}
    virtual ControlParameters sample(std::size_t i, std::size_t base_index, Rng& rng) = 0;
    virtual void report(std::size_t, const TrialOutcome&, Rng&) {}
    virtual void end_generation(Rng&) {}

    const PcmInfo& info() const noexcept { return *info_; }
    const Hyperparams& hyperparams() const noexcept { return params_; }

protected:
    virtual void reset(Rng& rng) = 0;
    double param(std::string_view name) const;
    std::size_t population_size() const noexcept { return n_; }
    int t_max() const noexcept { return t_max_; }

private:
    const PcmInfo* info_;
    Hyperparams params_;
    std::size_t n_ = 0;
    int t_max_ = 1;
};

/// Replaces values outside [0, 1] by the nearest limit.
constexpr double clamp_unit(double v) noexcept { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

} // namespace depcm::pcm
