#pragma once

// Concrete parameter control methods. Most code should go through
// registry.hpp; these declarations expose adaptive state for inspection.

#include <array>
#include <cstddef>
#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "depcm/pcm/control.hpp"

namespace depcm::pcm {

/// Cauchy draw with JADE's repair: values above 1 become 1, values <= 0 are redrawn.
double cauchy_truncated(Rng& rng, double location, double scale = 0.1);

// ---------------------------------------------------------------- baseline / DPCMs

class FixedControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    ControlParameters sample(std::size_t, std::size_t, Rng&) override { return fixed_; }

protected:
    void reset(Rng&) override;

private:
    ControlParameters fixed_;
};

class DersfControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    ControlParameters sample(std::size_t, std::size_t, Rng& rng) override;

protected:
    void reset(Rng&) override {}
};

class DetvsfControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    /// Unclamped linear ramp from F_max at t = 0 to F_min at t = t_max.
    static double scale_factor_at(int t, int t_max, double f_min, double f_max);
    void begin_generation(const GenerationContext& ctx, Rng&) override;
    ControlParameters sample(std::size_t, std::size_t, Rng&) override { return current_; }

protected:
    void reset(Rng&) override;

private:
    ControlParameters current_;
};

class SindeControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    static ControlParameters values_at(int t, int t_max, double omega);
    void begin_generation(const GenerationContext& ctx, Rng&) override;
    ControlParameters sample(std::size_t, std::size_t, Rng&) override { return current_; }

protected:
    void reset(Rng&) override;

private:
    ControlParameters current_;
};

class ZmdeControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    ControlParameters sample(std::size_t, std::size_t, Rng& rng) override;

protected:
    void reset(Rng&) override {}
};

class CodeControl final : public ParameterControl {
public:
    static constexpr std::array<ControlParameters, 3> pairs{{{1.0, 0.1}, {1.0, 0.9}, {0.8, 0.2}}};
    using ParameterControl::ParameterControl;
    ControlParameters sample(std::size_t, std::size_t, Rng& rng) override { return pairs[rng.index(pairs.size())]; }

protected:
    void reset(Rng&) override {}
};

class SwdeControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    ControlParameters sample(std::size_t, std::size_t, Rng& rng) override;

protected:
    void reset(Rng&) override {}
};

// ---------------------------------------------------------------- APCMs

class DepdControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    static double scale_factor(double f_min, double f_max, double F_min);
    void begin_generation(const GenerationContext& ctx, Rng&) override;
    ControlParameters sample(std::size_t, std::size_t, Rng&) override { return current_; }

protected:
    void reset(Rng&) override;

private:
    ControlParameters current_;
};

/// jDE and its two descendants: per-member parameters, regenerated trial
/// parameters inherited only after a successful trial.
class JdeFamilyControl : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    ControlParameters sample(std::size_t i, std::size_t base_index, Rng& rng) override;
    void report(std::size_t i, const TrialOutcome& outcome, Rng&) override;

    ControlParameters stored(std::size_t i) const { return stored_[i]; }

protected:
    void reset(Rng&) override;
    virtual ControlParameters make_trial(std::size_t i, ControlParameters current, Rng& rng) = 0;

private:
    std::vector<ControlParameters> stored_;
    std::vector<ControlParameters> trial_;
};

class JdeControl final : public JdeFamilyControl {
public:
    using JdeFamilyControl::JdeFamilyControl;

protected:
    ControlParameters make_trial(std::size_t i, ControlParameters current, Rng& rng) override;
};

class FdsadeControl final : public JdeFamilyControl {
public:
    using JdeFamilyControl::JdeFamilyControl;
    /// f_std / (f_max - f_min), 0 for a flat population.
    static double fitness_diversity(const GenerationContext& ctx);
    void begin_generation(const GenerationContext& ctx, Rng&) override;
    double regeneration_probability() const noexcept { return probability_; }

protected:
    ControlParameters make_trial(std::size_t i, ControlParameters current, Rng& rng) override;

private:
    double probability_ = 0.0;
};

class IsadeControl final : public JdeFamilyControl {
public:
    using JdeFamilyControl::JdeFamilyControl;
    /// (f_i - f_min) / (f_avg - f_min), 0 when f_avg == f_min.
    static double alpha(double f_i, double f_min, double f_avg);
    void begin_generation(const GenerationContext& ctx, Rng&) override;

protected:
    ControlParameters make_trial(std::size_t i, ControlParameters current, Rng& rng) override;

private:
    std::vector<double> f_;
    double f_min_ = 0.0;
    double f_avg_ = 0.0;
};

class CdeControl final : public ParameterControl {
public:
    static constexpr std::size_t pool_size = 9;
    using ParameterControl::ParameterControl;
    static ControlParameters pair(std::size_t k);
    static std::array<double, pool_size> selection_probabilities(std::span<const double> successes, double n0);

    ControlParameters sample(std::size_t i, std::size_t, Rng& rng) override;
    void report(std::size_t i, const TrialOutcome& outcome, Rng&) override;

    std::array<double, pool_size> probabilities() const;
    const std::array<double, pool_size>& successes() const noexcept { return successes_; }
    std::size_t reset_count() const noexcept { return resets_; }

protected:
    void reset(Rng&) override;

private:
    std::array<double, pool_size> successes_{};
    std::vector<std::size_t> chosen_;
    std::size_t resets_ = 0;
};

class SadeControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    static double median_of_window(const std::deque<std::vector<double>>& window);

    ControlParameters sample(std::size_t, std::size_t, Rng& rng) override;
    void report(std::size_t, const TrialOutcome& outcome, Rng&) override;
    void end_generation(Rng&) override;

    double mu_C() const noexcept { return mu_c_; }
    const std::deque<std::vector<double>>& window() const noexcept { return window_; }

protected:
    void reset(Rng&) override;

private:
    double mu_c_ = 0.5;
    int t_ = 0;
    std::deque<std::vector<double>> window_;
    std::vector<double> current_;
};

class SansdeControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    /// Normal-vs-Cauchy selection probability from the learning-period counters;
    /// returns `previous` when no success was recorded at all.
    static double updated_probability(double succ1, double total1, double succ2, double total2, double previous);

    ControlParameters sample(std::size_t i, std::size_t, Rng& rng) override;
    void report(std::size_t i, const TrialOutcome& outcome, Rng&) override;
    void end_generation(Rng&) override;

    double normal_probability() const noexcept { return p_; }
    double mu_C() const noexcept { return mu_c_; }

protected:
    void reset(Rng&) override;

private:
    double p_ = 0.5;
    double mu_c_ = 0.5;
    int t_ = 0;
    double succ1_ = 0, total1_ = 0, succ2_ = 0, total2_ = 0;
    std::vector<bool> used_normal_;
    std::vector<double> success_c_;
    std::vector<double> improvements_;
};

/// Shared bookkeeping of the mean-adaptive methods: successful F and C
/// values of the current generation.
class SuccessSetControl : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    void report(std::size_t i, const TrialOutcome& outcome, Rng&) override;
    void end_generation(Rng& rng) override;

    double mu_F() const noexcept { return mu_f_; }
    double mu_C() const noexcept { return mu_c_; }

protected:
    void reset(Rng&) override;
    virtual void adapt(std::span<const double> s_f, std::span<const double> s_c, Rng& rng) = 0;

    double mu_f_ = 0.5;
    double mu_c_ = 0.5;

private:
    std::vector<double> s_f_;
    std::vector<double> s_c_;
};

class JadeControl final : public SuccessSetControl {
public:
    using SuccessSetControl::SuccessSetControl;
    ControlParameters sample(std::size_t, std::size_t, Rng& rng) override;

protected:
    void adapt(std::span<const double> s_f, std::span<const double> s_c, Rng&) override;
};

class ImdeControl final : public SuccessSetControl {
public:
    using SuccessSetControl::SuccessSetControl;
    ControlParameters sample(std::size_t, std::size_t, Rng& rng) override;

protected:
    void adapt(std::span<const double> s_f, std::span<const double> s_c, Rng& rng) override;
};

class SladeControl final : public SuccessSetControl {
public:
    using SuccessSetControl::SuccessSetControl;
    ControlParameters sample(std::size_t, std::size_t, Rng& rng) override;

protected:
    void adapt(std::span<const double> s_f, std::span<const double> s_c, Rng&) override;
};

class ShadeControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    ControlParameters sample(std::size_t i, std::size_t, Rng& rng) override;
    void report(std::size_t i, const TrialOutcome& outcome, Rng&) override;
    void end_generation(Rng&) override;

    const std::vector<double>& memory_F() const noexcept { return m_f_; }
    const std::vector<double>& memory_C() const noexcept { return m_c_; }
    /// 0-based index of the next cell to be written
    std::size_t write_index() const noexcept { return k_; }

protected:
    void reset(Rng&) override;

private:
    std::vector<double> m_f_;
    std::vector<double> m_c_;
    std::size_t k_ = 0;
    std::vector<double> s_f_;
    std::vector<double> s_c_;
};

/// EPSDE and CoBiDE: a member keeps its pair after a success and draws a
/// fresh one after a failure.
class InheritedPairControl : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    ControlParameters sample(std::size_t i, std::size_t, Rng&) override { return pairs_[i]; }
    void report(std::size_t i, const TrialOutcome& outcome, Rng& rng) override;

protected:
    void reset(Rng& rng) override;
    virtual ControlParameters draw_pair(Rng& rng) = 0;

private:
    std::vector<ControlParameters> pairs_;
};

class EpsdeControl final : public InheritedPairControl {
public:
    static constexpr std::array<double, 6> f_pool{0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    static constexpr std::array<double, 9> c_pool{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    using InheritedPairControl::InheritedPairControl;

protected:
    ControlParameters draw_pair(Rng& rng) override;
};

class CobideControl final : public InheritedPairControl {
public:
    using InheritedPairControl::InheritedPairControl;
    /// One bimodal Cauchy draw before repair; `component` is 0 for the first mode.
    static double draw_mode(Rng& rng, double first, double second, int& component);

protected:
    ControlParameters draw_pair(Rng& rng) override;
};

class DedpsControl final : public ParameterControl {
public:
    static constexpr std::array<double, 7> f_pool{0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
    static constexpr std::array<double, 9> c_pool{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
    using ParameterControl::ParameterControl;

    void begin_generation(const GenerationContext& ctx, Rng& rng) override;
    ControlParameters sample(std::size_t i, std::size_t, Rng&) override;
    void report(std::size_t i, const TrialOutcome& outcome, Rng&) override;
    void end_generation(Rng&) override;

    /// indices (into the full 63-pair grid) still in the pool
    const std::vector<std::size_t>& active() const noexcept { return active_; }
    static ControlParameters pair(std::size_t k);
    static double score(double successes, double total) { return total > 0.0 ? successes / total : 0.0; }
    /// Keeps the better-scoring half (ties by pool order), dropping floor(m/2) pairs.
    static std::vector<std::size_t> prune(const std::vector<std::size_t>& active, std::span<const double> succ,
                                          std::span<const double> total);

protected:
    void reset(Rng&) override;

private:
    std::vector<std::size_t> active_;
    std::vector<double> succ_;
    std::vector<double> total_;
    std::vector<std::size_t> assigned_;
    std::vector<int> schedule_;
    int t_ = 0;
};

class RdeControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    /// Rank j is 1-based, 1 = best.
    static ControlParameters for_rank(std::size_t j, std::size_t n, double f_min, double f_max, double c_min,
                                      double c_max);
    void begin_generation(const GenerationContext& ctx, Rng&) override { ranks_ = ctx.ranks; }
    ControlParameters sample(std::size_t, std::size_t base_index, Rng&) override;

protected:
    void reset(Rng&) override { ranks_.clear(); }

private:
    std::vector<std::size_t> ranks_;
};

class IdeControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    /// location parameter j / N; 0 when N == 1
    static double rank_fraction(std::size_t rank, std::size_t n);
    void begin_generation(const GenerationContext& ctx, Rng&) override { ranks_ = ctx.ranks; }
    ControlParameters sample(std::size_t i, std::size_t base_index, Rng& rng) override;

protected:
    void reset(Rng&) override { ranks_.clear(); }

private:
    std::vector<std::size_t> ranks_;
};

// ---------------------------------------------------------------- SPCM

class SdeControl final : public ParameterControl {
public:
    using ParameterControl::ParameterControl;
    /// Maps values outside [0, 1] to their fractional part (1.4 -> 0.4).
    static double wrap(double x);
    ControlParameters sample(std::size_t i, std::size_t, Rng& rng) override;
    void report(std::size_t i, const TrialOutcome& outcome, Rng&) override;

    double stored_F(std::size_t i) const { return f_[i]; }

protected:
    void reset(Rng& rng) override;

private:
    std::vector<double> f_;
    std::vector<double> trial_f_;
};

} // namespace depcm::pcm
