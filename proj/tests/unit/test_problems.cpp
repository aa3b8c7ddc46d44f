#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "depcm/problems.hpp"
#include "depcm/rng.hpp"

using namespace depcm;
using namespace depcm::problems;

TEST_CASE("every function attains f_opt at x_opt") {
    for (const auto f : all_functions)
        for (std::size_t dim : {2, 3, 10}) {
            const auto p = make_problem(f, dim, 17);
            CAPTURE(p.id);
            CAPTURE(dim);
            CHECK(p.evaluate(p.x_opt) == doctest::Approx(p.f_opt).epsilon(1e-12));
            CHECK(p.bounds.contains(p.x_opt));
            // and nowhere nearby lower
            Rng rng(dim);
            for (int k = 0; k < 20; ++k) {
                auto x = p.x_opt;
                for (auto& v : x) v += rng.uniform(-0.1, 0.1);
                CHECK(p.evaluate(x) >= p.f_opt);
            }
        }
}

TEST_CASE("shifted sphere") {
    const auto p = make_problem(Function::sphere, 4, 3);
    auto x = p.x_opt;
    x[0] += 1.0;
    CHECK(p.evaluate(x) - p.f_opt == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(p.evaluate(std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST_CASE("rotations are orthogonal") {
    for (std::size_t dim : {2, 5, 10, 20}) {
        const auto r = orthogonal_matrix(dim, 99 + dim);
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) {
                double dot = 0.0;
                for (std::size_t k = 0; k < dim; ++k) dot += r[a * dim + k] * r[b * dim + k];
                CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
            }
        Rng rng(dim);
        std::vector<double> x(dim);
        for (auto& v : x) v = rng.uniform(-3, 3);
        double n_in = 0, n_out = 0;
        for (std::size_t a = 0; a < dim; ++a) {
            double y = 0.0;
            for (std::size_t k = 0; k < dim; ++k) y += r[a * dim + k] * x[k];
            n_out += y * y;
            n_in += x[a] * x[a];
        }
        CHECK(std::abs(std::sqrt(n_out) - std::sqrt(n_in)) < 1e-10);
    }
}

TEST_CASE("suite") {
    const std::size_t dims[] = {2, 10};
    const auto a = make_suite(dims, 5);
    const auto b = make_suite(dims, 5);
    const auto c = make_suite(dims, 6);
    CHECK(a.size() == 20);
    bool differs = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].x_opt == b[k].x_opt);
        CHECK(a[k].rotation == b[k].rotation);
        differs = differs || a[k].x_opt != c[k].x_opt;
    }
    CHECK(differs);

    std::map<Category, int> per_group;
    for (const auto f : all_functions) per_group[category_of(f)]++;
    CHECK(per_group.size() == 5);
    for (const auto& [cat, n] : per_group) CHECK(n == 2);

    const auto manifest = suite_manifest(a);
    CHECK(std::count(manifest.begin(), manifest.end(), '\n') == 20);
    CHECK(parse_function("griewank") == Function::griewank);
    CHECK_THROWS_AS(parse_function("nope"), ConfigError);
}
