#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace depcm::stats {

inline constexpr double power_mean_exponent = 1.5;

/// (sum s^2) / (sum s). Throws std::domain_error when the sum is zero or
/// the input is empty.
double lehmer_mean(std::span<const double> s);

double arithmetic_mean(std::span<const double> s);

/// ((1/n) sum s^p)^(1/p) over non-negative values.
double power_mean(std::span<const double> s, double p = power_mean_exponent);

/// Sum of w_k s_k with w_k proportional to improvements[k]; falls back to
/// the arithmetic mean when all improvements are zero.
double weighted_mean(std::span<const double> s, std::span<const double> improvements);

/// Mean of the two central order statistics for even sizes.
double median(std::span<const double> s);

enum class Comparison { a_better, b_better, no_difference };

std::string_view to_string(Comparison c) noexcept;

struct RankSumResult {
    double p_value = 1.0;
    double rank_sum_a = 0.0; // midranks, ascending (rank 1 = smallest)
    bool exact = false;
    Comparison outcome = Comparison::no_difference;
};

/// Samples with at most this many values on both sides use the exact
/// permutation distribution of the midrank sum.
inline constexpr std::size_t exact_rank_sum_limit = 10;

/// Two-sided Wilcoxon rank-sum test. Smaller values are better; the
/// direction of a significant result follows the medians, then the rank
/// sums when the medians coincide.
RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

double normal_cdf(double z);

} // namespace depcm::stats
