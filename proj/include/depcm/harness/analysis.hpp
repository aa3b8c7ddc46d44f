#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "depcm/harness/run.hpp"

namespace depcm::harness {

/// 10^(k/10) for k = 0..(10 log10(max_multiplier)), in evaluations per dimension.
std::vector<double> default_budget_axis(double max_multiplier = 10000.0);

/// Fraction of (trajectory, target) pairs reached within b * D evaluations,
/// for each b on the axis. All trajectories must share one dimension;
/// throws std::invalid_argument on empty input or mixed dimensions.
std::vector<double> ecdf(std::span<const RunTrajectory> runs, std::span<const double> budget_axis);

/// errors[a][p][r]: final error of algorithm a on problem p in run r.
using ErrorTable = std::vector<std::vector<std::vector<double>>>;

/// penalties[a][p]: number of rivals significantly better than a on p,
/// divided by (algorithms - 1).
std::vector<std::vector<double>> aps_penalties(const ErrorTable& errors, double alpha = 0.05);

/// Mean penalty over problems, one value per algorithm.
std::vector<double> aps(const ErrorTable& errors, double alpha = 0.05);

/// Mean penalty over the problems selected by `members`.
std::vector<double> aps_subset(const std::vector<std::vector<double>>& penalties,
                               std::span<const std::size_t> members);

} // namespace depcm::harness
