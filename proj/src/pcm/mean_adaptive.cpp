#include <cmath>
#include <numeric>

#include "depcm/pcm/methods.hpp"
#include "depcm/stats.hpp"

namespace depcm::pcm {

double cauchy_truncated(Rng& rng, double location, double scale) {
    for (;;) {
        const double F = rng.cauchy(location, scale);
        if (F > 1.0) return 1.0;
        if (F > 0.0) return F;
    }
}

// ---------------------------------------------------------------- SaDE

double SadeControl::median_of_window(const std::deque<std::vector<double>>& window) {
    std::vector<double> all;
    for (const auto& generation : window) all.insert(all.end(), generation.begin(), generation.end());
    return stats::median(all);
}

void SadeControl::reset(Rng&) {
    mu_c_ = 0.5;
    t_ = 0;
    window_.clear();
    current_.clear();
}

ControlParameters SadeControl::sample(std::size_t, std::size_t, Rng& rng) {
    // F is deliberately left unrepaired
    const double F = rng.normal(param("F_mean"), param("F_var"));
    const double C = clamp_unit(rng.normal(mu_c_, param("C_var")));
    return {F, C};
}

void SadeControl::report(std::size_t, const TrialOutcome& outcome, Rng&) {
    if (outcome.success) current_.push_back(outcome.C_used);
}

void SadeControl::end_generation(Rng&) {
    ++t_;
    const auto learn = static_cast<std::size_t>(param("t_learn"));
    window_.push_back(std::move(current_));
    current_.clear();
    while (window_.size() > learn) window_.pop_front();
    if (static_cast<std::size_t>(t_) < learn) return;
    bool any = false;
    for (const auto& g : window_) any = any || !g.empty();
    if (any) mu_c_ = median_of_window(window_);
}

// ---------------------------------------------------------------- SaNSDE

double SansdeControl::updated_probability(double succ1, double total1, double succ2, double total2,
                                          double previous) {
    const double num = succ1 * total2;
    const double den = succ2 * total1 + num;
    return den > 0.0 ? num / den : previous;
}

void SansdeControl::reset(Rng&) {
    p_ = 0.5;
    mu_c_ = 0.5;
    t_ = 0;
    succ1_ = total1_ = succ2_ = total2_ = 0.0;
    used_normal_.assign(population_size(), true);
    success_c_.clear();
    improvements_.clear();
}

ControlParameters SansdeControl::sample(std::size_t i, std::size_t, Rng& rng) {
    const bool normal = rng.uniform() < p_;
    used_normal_[i] = normal;
    const double F = normal ? rng.normal(0.5, 0.3) : rng.cauchy(0.0, 1.0);
    const double C = rng.normal(mu_c_, 0.1);
    return {clamp_unit(F), clamp_unit(C)};
}

void SansdeControl::report(std::size_t i, const TrialOutcome& outcome, Rng&) {
    (used_normal_[i] ? total1_ : total2_) += 1.0;
    if (!outcome.success) return;
    (used_normal_[i] ? succ1_ : succ2_) += 1.0;
    success_c_.push_back(outcome.C_used);
    improvements_.push_back(std::abs(outcome.f_parent - outcome.f_trial));
}

void SansdeControl::end_generation(Rng&) {
    ++t_;
    if (t_ % static_cast<int>(param("t_learn")) != 0) return;
    p_ = updated_probability(succ1_, total1_, succ2_, total2_, p_);
    succ1_ = total1_ = succ2_ = total2_ = 0.0;
    if (!success_c_.empty()) mu_c_ = stats::weighted_mean(success_c_, improvements_);
    success_c_.clear();
    improvements_.clear();
}

// ---------------------------------------------------------------- JADE, IMDE, SLADE

void SuccessSetControl::reset(Rng&) {
    mu_f_ = 0.5;
    mu_c_ = 0.5;
    s_f_.clear();
    s_c_.clear();
}

void SuccessSetControl::report(std::size_t, const TrialOutcome& outcome, Rng&) {
    if (!outcome.success) return;
    s_f_.push_back(outcome.F_used);
    s_c_.push_back(outcome.C_used);
}

void SuccessSetControl::end_generation(Rng& rng) {
    if (!s_f_.empty()) adapt(s_f_, s_c_, rng);
    s_f_.clear();
    s_c_.clear();
}

ControlParameters JadeControl::sample(std::size_t, std::size_t, Rng& rng) {
    const double F = cauchy_truncated(rng, mu_f_);
    const double C = clamp_unit(rng.normal(mu_c_, 0.1));
    return {F, C};
}

void JadeControl::adapt(std::span<const double> s_f, std::span<const double> s_c, Rng&) {
    const double c = param("c");
    if (std::accumulate(s_f.begin(), s_f.end(), 0.0) > 0.0)
        mu_f_ = (1.0 - c) * mu_f_ + c * stats::lehmer_mean(s_f);
    mu_c_ = (1.0 - c) * mu_c_ + c * stats::arithmetic_mean(s_c);
}

ControlParameters ImdeControl::sample(std::size_t, std::size_t, Rng& rng) {
    const double F = cauchy_truncated(rng, mu_f_);
    const double C = clamp_unit(rng.normal(mu_c_, 0.1));
    return {F, C};
}

void ImdeControl::adapt(std::span<const double> s_f, std::span<const double> s_c, Rng& rng) {
    const double c_f = rng.uniform(0.0, param("c_F_max"));
    const double c_c = rng.uniform(0.0, param("c_C_max"));
    mu_f_ = (1.0 - c_f) * mu_f_ + c_f * stats::power_mean(s_f);
    mu_c_ = (1.0 - c_c) * mu_c_ + c_c * stats::power_mean(s_c);
}

ControlParameters SladeControl::sample(std::size_t, std::size_t, Rng& rng) {
    double F = rng.normal(mu_f_, 0.1);
    if (F < 0.0 || F > 1.0) F = 1.0;
    double C;
    do {
        C = rng.cauchy(mu_c_, 0.1);
    } while (C < 0.0 || C > 1.0);
    return {F, C};
}

void SladeControl::adapt(std::span<const double> s_f, std::span<const double> s_c, Rng&) {
    const double c = param("c");
    mu_f_ = (1.0 - c) * mu_f_ + c * stats::arithmetic_mean(s_f);
    mu_c_ = (1.0 - c) * mu_c_ + c * stats::arithmetic_mean(s_c);
}

// ---------------------------------------------------------------- SHADE

void ShadeControl::reset(Rng&) {
    const auto h = static_cast<std::size_t>(param("H"));
    m_f_.assign(h, 0.5);
    m_c_.assign(h, 0.5);
    k_ = 0;
    s_f_.clear();
    s_c_.clear();
}

ControlParameters ShadeControl::sample(std::size_t, std::size_t, Rng& rng) {
    const std::size_t r = rng.index(m_f_.size());
    const double F = cauchy_truncated(rng, m_f_[r]);
    const double C = clamp_unit(rng.normal(m_c_[r], 0.1));
    return {F, C};
}

void ShadeControl::report(std::size_t, const TrialOutcome& outcome, Rng&) {
    if (!outcome.success) return;
    s_f_.push_back(outcome.F_used);
    s_c_.push_back(outcome.C_used);
}

void ShadeControl::end_generation(Rng&) {
    if (!s_f_.empty()) {
        m_f_[k_] = stats::lehmer_mean(s_f_);
        // an all-zero C success set carries no location; the cell keeps its value
        if (std::accumulate(s_c_.begin(), s_c_.end(), 0.0) > 0.0) m_c_[k_] = stats::lehmer_mean(s_c_);
        k_ = (k_ + 1) % m_f_.size();
    }
    s_f_.clear();
    s_c_.clear();
}

} // namespace depcm::pcm
