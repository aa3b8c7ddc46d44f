#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "checks.hpp"
#include "depcm/stats.hpp"

using namespace depcm;
using doctest::Approx;

TEST_CASE("means") {
    using V = std::vector<double>;
    CHECK(stats::lehmer_mean(V{0.5, 0.5}) == 0.5);
    CHECK(stats::lehmer_mean(V{0.2, 0.4}) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(stats::lehmer_mean(V{0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(stats::lehmer_mean(V{}), std::domain_error);
    CHECK(stats::lehmer_mean(V{0.1, 0.7, 0.3}) >= stats::arithmetic_mean(V{0.1, 0.7, 0.3}));

    CHECK(stats::power_mean(V{0.3}) == Approx(0.3).epsilon(1e-15));
    CHECK(stats::power_mean(V{0.2, 0.6}, 1.0) == Approx(0.4).epsilon(1e-15));

    CHECK(stats::weighted_mean(V{0.2, 0.8}, V{1, 1}) == Approx(0.5));
    CHECK(stats::weighted_mean(V{0.2, 0.8}, V{0, 0}) == Approx(0.5));
    CHECK(stats::weighted_mean(V{0.7}, V{2}) == 0.7);

    CHECK(stats::median(V{0.4}) == 0.4);
    CHECK(stats::median(V{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7}) == 0.4);
    CHECK(stats::median(V{1, 3}) == 2);
}

TEST_CASE("means against brute force") {
    const auto r = checks::mean_oracles(200, 77, 1e-12);
    INFO((r.ok() ? std::string() : r.failures.front()));
    CHECK(r.ok());
}

TEST_CASE("rank-sum test") {
    using V = std::vector<double>;
    const auto small = stats::rank_sum_test(V{1, 2, 3}, V{4, 5, 6});
    CHECK(small.exact);
    CHECK(small.p_value == Approx(0.1).epsilon(1e-12));
    CHECK(small.outcome == stats::Comparison::no_difference);

    const auto same = stats::rank_sum_test(V{1, 2, 3, 4}, V{1, 2, 3, 4});
    CHECK(same.outcome == stats::Comparison::no_difference);

    V a, b;
    for (int k = 0; k < 15; ++k) {
        a.push_back(0.01 * k);
        b.push_back(1.0 + 0.01 * k);
    }
    const auto big = stats::rank_sum_test(a, b);
    CHECK_FALSE(big.exact);
    CHECK(big.p_value < 1e-4);
    CHECK(big.outcome == stats::Comparison::a_better);
    CHECK(stats::rank_sum_test(b, a).outcome == stats::Comparison::b_better);

    const auto r = checks::rank_sum_oracle(300, 5);
    INFO((r.ok() ? std::string() : r.failures.front()));
    CHECK(r.ok());
}

TEST_CASE("normal cdf") {
    CHECK(stats::normal_cdf(0.0) == Approx(0.5));
    CHECK(stats::normal_cdf(1.959963984540054) == Approx(0.975).epsilon(1e-9));
}
