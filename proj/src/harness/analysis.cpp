#include "depcm/harness/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "depcm/stats.hpp"

namespace depcm::harness {

std::vector<double> default_budget_axis(double max_multiplier) {
    const int top = static_cast<int>(std::floor(10.0 * std::log10(max_multiplier) + 1e-9));
    std::vector<double> axis;
    for (int k = 0; k <= top; ++k) axis.push_back(std::pow(10.0, k / 10.0));
    return axis;
}

std::vector<double> ecdf(std::span<const RunTrajectory> runs, std::span<const double> budget_axis) {
    if (runs.empty()) throw std::invalid_argument("ecdf needs at least one trajectory");
    const std::size_t dim = runs.front().dimension;
    for (const auto& r : runs)
        if (r.dimension != dim) throw std::invalid_argument("ecdf cannot mix dimensions");

    const double total = static_cast<double>(runs.size() * target_count);
    std::vector<double> out;
    out.reserve(budget_axis.size());
    for (double b : budget_axis) {
        const double limit = b * static_cast<double>(dim);
        std::size_t hits = 0;
        for (const auto& r : runs)
            for (auto h : r.target_hits)
                if (h >= 0 && static_cast<double>(h) <= limit) ++hits;
        out.push_back(static_cast<double>(hits) / total);
    }
    return out;
}

std::vector<std::vector<double>> aps_penalties(const ErrorTable& errors, double alpha) {
    const std::size_t m = errors.size();
    if (m < 2) throw std::invalid_argument("APS needs at least two algorithms");
    const std::size_t problems = errors.front().size();
    for (const auto& row : errors)
        if (row.size() != problems) throw std::invalid_argument("APS tables must cover the same problems");

    std::vector<std::vector<double>> penalty(m, std::vector<double>(problems, 0.0));
    for (std::size_t p = 0; p < problems; ++p)
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                const auto res = stats::rank_sum_test(errors[a][p], errors[b][p], alpha);
                if (res.outcome == stats::Comparison::a_better) penalty[b][p] += 1.0;
                if (res.outcome == stats::Comparison::b_better) penalty[a][p] += 1.0;
            }
    for (auto& row : penalty)
        for (auto& v : row) v /= static_cast<double>(m - 1);
    return penalty;
}

std::vector<double> aps_subset(const std::vector<std::vector<double>>& penalties,
                               std::span<const std::size_t> members) {
    std::vector<double> out;
    for (const auto& row : penalties) {
        double sum = 0.0;
        for (auto p : members) sum += row.at(p);
        out.push_back(members.empty() ? 0.0 : sum / static_cast<double>(members.size()));
    }
    return out;
}

std::vector<double> aps(const ErrorTable& errors, double alpha) {
    const auto penalties = aps_penalties(errors, alpha);
    std::vector<std::size_t> all(errors.front().size());
    for (std::size_t p = 0; p < all.size(); ++p) all[p] = p;
    return aps_subset(penalties, all);
}

} // namespace depcm::harness
