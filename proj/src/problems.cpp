#include "depcm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

#include "depcm/rng.hpp"

namespace depcm::problems {

namespace {

// minimiser of -y sin(sqrt|y|) on [-500, 500]
constexpr double schwefel_center = 420.9687463599820;
constexpr double schwefel_scale = 100.0;
constexpr double gallagher_top = 10.0;

struct FunctionInfo {
    Function function;
    std::string_view name;
    Category category;
    bool rotated;
};

constexpr FunctionInfo function_table[] = {
    {Function::sphere, "sphere", Category::separable, false},
    {Function::ellipsoid, "ellipsoid", Category::separable, false},
    {Function::rosenbrock_rotated, "rosenbrock_rotated", Category::moderate_conditioning, true},
    {Function::attractive_sector, "attractive_sector", Category::moderate_conditioning, true},
    {Function::ellipsoid_rotated, "ellipsoid_rotated", Category::high_conditioning, true},
    {Function::discus, "discus", Category::high_conditioning, true},
    {Function::rastrigin_rotated, "rastrigin_rotated", Category::multimodal_adequate, true},
    {Function::griewank, "griewank", Category::multimodal_adequate, false},
    {Function::schwefel, "schwefel", Category::multimodal_weak, false},
    {Function::gallagher21, "gallagher21", Category::multimodal_weak, true},
};

const FunctionInfo& info(Function f) {
    for (const auto& entry : function_table)
        if (entry.function == f) return entry;
    return function_table[0];
}

double ellipsoid_weight(std::size_t i, std::size_t dim) {
    if (dim < 2) return 1.0;
    return std::pow(10.0, 6.0 * static_cast<double>(i) / static_cast<double>(dim - 1));
}

double schwefel_term(double y) {
    const double edge = 500.0;
    if (y > edge) return -edge * std::sin(std::sqrt(edge)) + (y - edge) * (y - edge);
    if (y < -edge) return edge * std::sin(std::sqrt(edge)) + (y + edge) * (y + edge);
    return -y * std::sin(std::sqrt(std::abs(y)));
}

const double schwefel_offset = -schwefel_term(schwefel_center);

void apply_rotation(const std::vector<double>& r, std::span<const double> in, std::span<double> out) {
    const std::size_t d = in.size();
    for (std::size_t i = 0; i < d; ++i) {
        const double* row = r.data() + i * d;
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += row[j] * in[j];
        out[i] = acc;
    }
}

} // namespace

std::string_view to_string(Category c) noexcept {
    switch (c) {
    case Category::separable: return "separable";
    case Category::moderate_conditioning: return "moderate_conditioning";
    case Category::high_conditioning: return "high_conditioning";
    case Category::multimodal_adequate: return "multimodal_adequate";
    case Category::multimodal_weak: return "multimodal_weak";
    }
    return "?";
}

std::string_view to_string(Function f) noexcept { return info(f).name; }

Function parse_function(std::string_view name) {
    for (const auto& entry : function_table)
        if (entry.name == name) return entry.function;
    std::string valid;
    for (const auto& entry : function_table) valid += (valid.empty() ? "" : ", ") + std::string(entry.name);
    throw ConfigError("unknown problem '" + std::string(name) + "' (valid: " + valid + ")");
}

Category category_of(Function f) noexcept { return info(f).category; }
bool is_rotated(Function f) noexcept { return info(f).rotated; }

double Problem::evaluate(std::span<const double> x) const {
    if (x.size() != dimension)
        throw std::invalid_argument("problem " + id + " expects dimension " + std::to_string(dimension) + ", got " +
                                    std::to_string(x.size()));
    thread_local std::vector<double> shifted, z;
    shifted.resize(dimension);
    z.resize(dimension);
    for (std::size_t j = 0; j < dimension; ++j) shifted[j] = x[j] - x_opt[j];
    if (rotation.empty())
        std::copy(shifted.begin(), shifted.end(), z.begin());
    else
        apply_rotation(rotation, shifted, z);

    const std::size_t d = dimension;
    double f = 0.0;
    switch (function) {
    case Function::sphere:
        for (double v : z) f += v * v;
        break;
    case Function::ellipsoid:
    case Function::ellipsoid_rotated:
        for (std::size_t i = 0; i < d; ++i) f += ellipsoid_weight(i, d) * z[i] * z[i];
        break;
    case Function::rosenbrock_rotated: {
        const double c = std::max(1.0, std::sqrt(static_cast<double>(d)) / 8.0);
        for (auto& v : z) v = c * v + 1.0;
        if (d == 1) {
            f = (z[0] - 1.0) * (z[0] - 1.0);
            break;
        }
        for (std::size_t i = 0; i + 1 < d; ++i) {
            const double a = z[i] * z[i] - z[i + 1];
            const double b = z[i] - 1.0;
            f += 100.0 * a * a + b * b;
        }
        break;
    }
    case Function::attractive_sector:
        for (double v : z) {
            const double s = v > 0.0 ? 100.0 : 1.0;
            f += (s * v) * (s * v);
        }
        break;
    case Function::discus:
        f = 1e6 * z[0] * z[0];
        for (std::size_t i = 1; i < d; ++i) f += z[i] * z[i];
        break;
    case Function::rastrigin_rotated: {
        double sum = 0.0;
        for (double v : z) sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
        f = 10.0 * static_cast<double>(d) + sum;
        break;
    }
    case Function::griewank: {
        double sum = 0.0, prod = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            sum += z[i] * z[i] / 4000.0;
            prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
        }
        f = 1.0 + sum - prod;
        break;
    }
    case Function::schwefel: {
        double sum = 0.0;
        for (double v : z) sum += schwefel_term(schwefel_center + schwefel_scale * v) + schwefel_offset;
        f = sum / static_cast<double>(d);
        break;
    }
    case Function::gallagher21: {
        // z holds R (x - x_opt); rebuild R x once and compare against each R y_k
        std::vector<double>& rx = shifted;
        apply_rotation(rotation, x, rx);
        double best = 0.0;
        for (const auto& peak : peaks) {
            double q = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double delta = rx[j] - peak.rotated_center[j];
                q += peak.scales[j] * delta * delta;
            }
            best = std::max(best, peak.weight * std::exp(-q / (2.0 * static_cast<double>(d))));
        }
        const double gap = gallagher_top - best;
        f = gap * gap;
        break;
    }
    }
    return f + f_opt;
}

std::vector<double> orthogonal_matrix(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd g(dim, dim);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.normal(0.0, 1.0);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    std::vector<double> out(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            out[i * dim + j] = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

Problem make_problem(Function f, std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw ConfigError("problem dimension must be positive");
    const auto fn_index = static_cast<std::uint64_t>(f);
    Problem p;
    p.function = f;
    p.id = std::string(to_string(f));
    p.dimension = dim;
    p.category = category_of(f);
    p.bounds = core::Bounds::uniform(dim, -5.0, 5.0);
    p.shift_seed = derive_seed(seed, fn_index, dim);

    Rng shift(p.shift_seed);
    p.x_opt.resize(dim);
    for (auto& v : p.x_opt) v = shift.uniform(-4.0, 4.0);
    p.f_opt = std::round(shift.uniform(-100.0, 100.0) * 100.0) / 100.0;

    if (is_rotated(f)) {
        p.rotation_seed = derive_seed(seed, fn_index + 100, dim);
        p.rotation = orthogonal_matrix(dim, *p.rotation_seed);
    }

    if (f == Function::gallagher21) {
        Rng peaks_rng(derive_seed(p.shift_seed, 21));
        const std::size_t n_peaks = 21;
        std::vector<double> alphas;
        for (int j = 0; j < 20; ++j) alphas.push_back(std::pow(1000.0, 2.0 * j / 19.0));
        peaks_rng.shuffle(alphas);
        for (std::size_t k = 0; k < n_peaks; ++k) {
            std::vector<double> center(dim);
            if (k == 0)
                center = p.x_opt;
            else
                for (auto& v : center) v = peaks_rng.uniform(-4.9, 4.9);
            Peak peak;
            peak.rotated_center.resize(dim);
            apply_rotation(p.rotation, center, peak.rotated_center);
            peak.weight = k == 0 ? gallagher_top : 1.1 + 8.0 * static_cast<double>(k - 1) / 19.0;
            const double alpha = k == 0 ? 1000.0 : alphas[k - 1];
            peak.scales.resize(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                const double e = dim > 1 ? static_cast<double>(j) / static_cast<double>(dim - 1) : 0.0;
                peak.scales[j] = std::pow(alpha, e - 0.5);
            }
            peaks_rng.shuffle(peak.scales);
            p.peaks.push_back(std::move(peak));
        }
    }
    return p;
}

std::vector<Problem> make_suite(std::span<const std::size_t> dimensions, std::uint64_t seed) {
    std::vector<Problem> suite;
    for (std::size_t dim : dimensions)
        for (Function f : all_functions) suite.push_back(make_problem(f, dim, seed));
    return suite;
}

std::string suite_manifest(std::span<const Problem> suite) {
    std::string out;
    for (const auto& p : suite) {
        nlohmann::ordered_json j;
        j["id"] = p.id;
        j["D"] = p.dimension;
        j["category"] = std::string(to_string(p.category));
        j["f_opt"] = p.f_opt;
        j["shift_seed"] = p.shift_seed;
        j["rotation_seed"] = p.rotation_seed ? nlohmann::ordered_json(*p.rotation_seed) : nlohmann::ordered_json();
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace depcm::problems
