#include "depcm/core/population.hpp"

#include <cmath>

namespace depcm::core {

namespace {

struct MutationName {
    Mutation value;
    std::string_view name;
};

constexpr MutationName mutation_names[] = {
    {Mutation::rand_1, "rand/1"},
    {Mutation::rand_2, "rand/2"},
    {Mutation::best_1, "best/1"},
    {Mutation::best_2, "best/2"},
    {Mutation::current_to_rand_1, "current-to-rand/1"},
    {Mutation::current_to_best_1, "current-to-best/1"},
    {Mutation::current_to_pbest_1, "current-to-pbest/1"},
    {Mutation::rand_to_pbest_1, "rand-to-pbest/1"},
};

} // namespace

bool Bounds::contains(std::span<const double> x) const noexcept {
    if (x.size() != lower.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!(x[j] >= lower[j] && x[j] <= upper[j])) return false;
    return true;
}

std::string_view to_string(Mutation m) noexcept {
    for (const auto& entry : mutation_names)
        if (entry.value == m) return entry.name;
    return "?";
}

std::string_view to_string(Crossover c) noexcept {
    switch (c) {
    case Crossover::bin: return "bin";
    case Crossover::exp: return "exp";
    case Crossover::sec: return "sec";
    }
    return "?";
}

Mutation parse_mutation(std::string_view name) {
    for (const auto& entry : mutation_names)
        if (entry.name == name) return entry.value;
    std::string valid;
    for (const auto& entry : mutation_names) {
        if (!valid.empty()) valid += ", ";
        valid += entry.name;
    }
    throw ConfigError("unknown mutation strategy '" + std::string(name) + "' (valid: " + valid + ")");
}

Crossover parse_crossover(std::string_view name) {
    if (name == "bin") return Crossover::bin;
    if (name == "exp") return Crossover::exp;
    if (name == "sec") return Crossover::sec;
    throw ConfigError("unknown crossover '" + std::string(name) + "' (valid: bin, exp, sec)");
}

std::string OperatorConfig::name() const {
    return std::string(to_string(mutation)) + "/" + std::string(to_string(crossover));
}

OperatorConfig OperatorConfig::parse(std::string_view name) {
    const auto slash = name.rfind('/');
    if (slash == std::string_view::npos)
        throw ConfigError("operator '" + std::string(name) + "' is not of the form <mutation>/<crossover>");
    OperatorConfig cfg;
    cfg.mutation = parse_mutation(name.substr(0, slash));
    cfg.crossover = parse_crossover(name.substr(slash + 1));
    return cfg;
}

std::vector<OperatorConfig> OperatorConfig::all16() {
    std::vector<OperatorConfig> out;
    for (Crossover c : {Crossover::bin, Crossover::sec}) {
        for (Mutation m : all_mutations) {
            OperatorConfig cfg;
            cfg.mutation = m;
            cfg.crossover = c;
            out.push_back(cfg);
        }
    }
    return out;
}

std::size_t OperatorConfig::pbest_count(std::size_t n) const {
    const auto count = static_cast<std::size_t>(std::ceil(p_best_fraction * static_cast<double>(n)));
    return count < 1 ? 1 : (count > n ? n : count);
}

void OperatorConfig::validate(std::size_t n) const {
    if (!(p_best_fraction > 0.0 && p_best_fraction <= 1.0))
        throw ConfigError("p_best_fraction must lie in (0, 1]");
    if (n == 0) throw ConfigError("population size must be positive");
}

} // namespace depcm::core
