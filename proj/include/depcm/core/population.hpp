#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace depcm {

/// Raised for invalid configuration: unknown names, out-of-range settings.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace depcm

namespace depcm::core {

/// Per-dimension box constraints.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds uniform(std::size_t dim, double lo, double hi) {
        return {std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
    }
    std::size_t dimension() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const noexcept;
};

struct Individual {
    std::vector<double> x;
    double f = std::numeric_limits<double>::infinity();
    // parameters that produced this individual's most recent trial
    double assigned_F = 0.0;
    double assigned_C = 0.0;
};

struct Population {
    std::vector<Individual> members;
    std::vector<Individual> archive;
    std::size_t archive_cap = 0;
    int generation = 1;

    std::size_t size() const noexcept { return members.size(); }
    std::size_t dimension() const noexcept { return members.empty() ? 0 : members.front().x.size(); }
    /// Member i for i < N, archive entry i - N otherwise.
    const Individual& pooled(std::size_t i) const { return i < members.size() ? members[i] : archive[i - members.size()]; }
};

enum class Mutation {
    rand_1,
    rand_2,
    best_1,
    best_2,
    current_to_rand_1,
    current_to_best_1,
    current_to_pbest_1,
    rand_to_pbest_1,
};

enum class Crossover { bin, exp, sec };

inline constexpr Mutation all_mutations[] = {
    Mutation::rand_1,           Mutation::rand_2,           Mutation::best_1,
    Mutation::best_2,           Mutation::current_to_rand_1, Mutation::current_to_best_1,
    Mutation::current_to_pbest_1, Mutation::rand_to_pbest_1,
};

std::string_view to_string(Mutation m) noexcept;
std::string_view to_string(Crossover c) noexcept;
Mutation parse_mutation(std::string_view name);
Crossover parse_crossover(std::string_view name);

struct OperatorConfig {
    Mutation mutation = Mutation::rand_1;
    Crossover crossover = Crossover::bin;
    double p_best_fraction = 0.05;
    std::optional<std::size_t> archive_cap; // population size when unset

    /// "rand/1/bin" style name
    std::string name() const;
    /// Parses "current-to-pbest/1/sec" and friends.
    static OperatorConfig parse(std::string_view name);
    /// The 16 operators: eight mutation strategies crossed with bin and sec.
    static std::vector<OperatorConfig> all16();

    std::size_t pbest_count(std::size_t n) const;
    void validate(std::size_t n) const;
};

} // namespace depcm::core
