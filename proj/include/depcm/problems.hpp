#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depcm/core/population.hpp"

namespace depcm::problems {

/// The five groups of the noiseless BBOB set.
enum class Category {
    separable,
    moderate_conditioning,
    high_conditioning,
    multimodal_adequate,
    multimodal_weak,
};

std::string_view to_string(Category c) noexcept;

enum class Function {
    sphere,
    ellipsoid,
    rosenbrock_rotated,
    attractive_sector,
    ellipsoid_rotated,
    discus,
    rastrigin_rotated,
    griewank,
    schwefel,
    gallagher21,
};

inline constexpr Function all_functions[] = {
    Function::sphere,         Function::ellipsoid,         Function::rosenbrock_rotated, Function::attractive_sector,
    Function::ellipsoid_rotated, Function::discus,         Function::rastrigin_rotated,  Function::griewank,
    Function::schwefel,       Function::gallagher21,
};

std::string_view to_string(Function f) noexcept;
Function parse_function(std::string_view name);
Category category_of(Function f) noexcept;
bool is_rotated(Function f) noexcept;

struct Peak {
    std::vector<double> rotated_center; // R * y_k
    std::vector<double> scales;         // diagonal conditioning
    double weight = 0.0;
};

/// Immutable after construction; safe to evaluate from several threads.
///
/// Every function is written f(x) = base(z) + f_opt with z = R (x - x_opt)
/// for rotated functions and z = x - x_opt otherwise, and base(0) = 0 is
/// the global minimum.
struct Problem {
    std::string id;
    Function function = Function::sphere;
    std::size_t dimension = 0;
    core::Bounds bounds;
    double f_opt = 0.0;
    std::vector<double> x_opt;
    Category category = Category::separable;
    std::uint64_t shift_seed = 0;
    std::optional<std::uint64_t> rotation_seed;
    std::vector<double> rotation; // row-major D x D, empty when unrotated
    std::vector<Peak> peaks;      // Gallagher only

    double evaluate(std::span<const double> x) const;
};

/// Free-function spelling of Problem::evaluate. Throws std::invalid_argument
/// on a dimension mismatch.
inline double evaluate(const Problem& p, std::span<const double> x) { return p.evaluate(x); }

/// Orthogonal matrix from the QR decomposition of a seeded Gaussian matrix,
/// columns sign-fixed so that diag(R) > 0. Row-major.
std::vector<double> orthogonal_matrix(std::size_t dim, std::uint64_t seed);

Problem make_problem(Function f, std::size_t dim, std::uint64_t seed);

/// Ten functions, two per category, at every requested dimension.
std::vector<Problem> make_suite(std::span<const std::size_t> dimensions, std::uint64_t seed);

/// JSON lines, one object per problem: id, D, category, f_opt, seeds.
std::string suite_manifest(std::span<const Problem> suite);

} // namespace depcm::problems
