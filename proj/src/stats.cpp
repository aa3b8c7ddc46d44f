#include "depcm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace depcm::stats {

double lehmer_mean(std::span<const double> s) {
    if (s.empty()) throw std::domain_error("lehmer_mean of an empty set");
    double num = 0.0, den = 0.0;
    for (double v : s) {
        num += v * v;
        den += v;
    }
    if (den == 0.0) throw std::domain_error("lehmer_mean with zero denominator");
    return num / den;
}

double arithmetic_mean(std::span<const double> s) {
    if (s.empty()) throw std::domain_error("mean of an empty set");
    return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
}

double power_mean(std::span<const double> s, double p) {
    if (s.empty()) throw std::domain_error("power_mean of an empty set");
    double acc = 0.0;
    for (double v : s) acc += std::pow(v, p);
    return std::pow(acc / static_cast<double>(s.size()), 1.0 / p);
}

double weighted_mean(std::span<const double> s, std::span<const double> improvements) {
    if (s.empty() || s.size() != improvements.size())
        throw std::domain_error("weighted_mean needs one improvement per value");
    double total = 0.0;
    for (double w : improvements) total += std::abs(w);
    if (total == 0.0) return arithmetic_mean(s);
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) acc += std::abs(improvements[k]) / total * s[k];
    return acc;
}

double median(std::span<const double> s) {
    if (s.empty()) throw std::domain_error("median of an empty set");
    std::vector<double> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string_view to_string(Comparison c) noexcept {
    switch (c) {
    case Comparison::a_better: return "a_better";
    case Comparison::b_better: return "b_better";
    case Comparison::no_difference: return "no_difference";
    }
    return "?";
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

struct Ranked {
    std::vector<std::int64_t> doubled_rank; // 2 * midrank, in input order (a then b)
    double tie_term = 0.0;                  // sum of t^3 - t over tie groups
};

Ranked midranks(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size() + b.size();
    std::vector<double> values;
    values.reserve(n);
    values.insert(values.end(), a.begin(), a.end());
    values.insert(values.end(), b.begin(), b.end());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });

    Ranked out;
    out.doubled_rank.resize(n);
    std::size_t lo = 0;
    while (lo < n) {
        std::size_t hi = lo;
        while (hi + 1 < n && values[order[hi + 1]] == values[order[lo]]) ++hi;
        // positions lo..hi (0-based) share midrank ((lo+1)+(hi+1))/2
        const auto doubled = static_cast<std::int64_t>(lo + hi + 2);
        for (std::size_t k = lo; k <= hi; ++k) out.doubled_rank[order[k]] = doubled;
        const double t = static_cast<double>(hi - lo + 1);
        out.tie_term += t * t * t - t;
        lo = hi + 1;
    }
    return out;
}

// two-sided p-value of the doubled rank sum of the first na items under the
// permutation distribution, by counting subsets per achievable sum
double exact_p_value(const Ranked& r, std::size_t na, std::int64_t observed) {
    const std::size_t n = r.doubled_rank.size();
    const auto max_sum = static_cast<std::size_t>(std::accumulate(r.doubled_rank.begin(), r.doubled_rank.end(),
                                                                  std::int64_t{0}));
    // counts[k][s]: subsets of size k with doubled sum s
    std::vector<std::vector<double>> counts(na + 1, std::vector<double>(max_sum + 1, 0.0));
    counts[0][0] = 1.0;
    for (std::size_t item = 0; item < n; ++item) {
        const auto w = static_cast<std::size_t>(r.doubled_rank[item]);
        for (std::size_t k = std::min(na, item + 1); k >= 1; --k)
            for (std::size_t s = max_sum; s >= w; --s) counts[k][s] += counts[k - 1][s - w];
    }
    const std::int64_t expected = static_cast<std::int64_t>(na) * static_cast<std::int64_t>(n + 1);
    const std::int64_t dev = std::llabs(observed - expected);
    double total = 0.0, extreme = 0.0;
    for (std::size_t s = 0; s <= max_sum; ++s) {
        total += counts[na][s];
        if (std::llabs(static_cast<std::int64_t>(s) - expected) >= dev) extreme += counts[na][s];
    }
    return extreme / total;
}

} // namespace

RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b, double alpha) {
    if (a.size() < 2 || b.size() < 2) throw std::domain_error("rank_sum_test needs at least two values per sample");
    RankSumResult result;
    const auto ranked = midranks(a, b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double n = na + nb;

    std::int64_t doubled_sum = 0;
    for (std::size_t k = 0; k < a.size(); ++k) doubled_sum += ranked.doubled_rank[k];
    result.rank_sum_a = 0.5 * static_cast<double>(doubled_sum);

    if (ranked.tie_term == n * n * n - n) {
        // every value equal
        result.p_value = 1.0;
        return result;
    }

    if (a.size() <= exact_rank_sum_limit && b.size() <= exact_rank_sum_limit) {
        result.exact = true;
        result.p_value = exact_p_value(ranked, a.size(), doubled_sum);
    } else {
        const double expected = na * (n + 1.0) / 2.0;
        const double variance = na * nb / 12.0 * ((n + 1.0) - ranked.tie_term / (n * (n - 1.0)));
        const double z = std::max(0.0, std::abs(result.rank_sum_a - expected) - 0.5) / std::sqrt(variance);
        result.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
    }

    if (result.p_value < alpha) {
        const double ma = median(a), mb = median(b);
        bool a_wins;
        if (ma != mb)
            a_wins = ma < mb;
        else
            a_wins = result.rank_sum_a < na * (n + 1.0) / 2.0;
        result.outcome = a_wins ? Comparison::a_better : Comparison::b_better;
    }
    return result;
}

} // namespace depcm::stats
