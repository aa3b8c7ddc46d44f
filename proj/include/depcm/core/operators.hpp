#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "depcm/core/population.hpp"
#include "depcm/rng.hpp"

namespace depcm::core {

/// Population ordering shared by every mutation in one generation.
struct DonorPool {
    std::size_t best = 0;
    std::vector<std::size_t> order; // member indices sorted by (f, index)

    static DonorPool build(const Population& pop);
};

/// Indices drawn for one mutation. Slots flagged in `from_archive_slot` may
/// address the archive (index >= N, see Population::pooled).
struct Donors {
    std::size_t base_index = 0;
    std::size_t target = 0;
    std::size_t best = 0;
    std::size_t pbest = 0;
    std::array<std::size_t, 5> r{};
    std::size_t count = 0;
};

/// Minimum population size a strategy needs for fully distinct donors.
std::size_t minimum_population(Mutation m) noexcept;

/// Draws donors for target i. The base index is fixed here so rank-based
/// parameter control can see it before F is chosen.
Donors select_donors(const Population& pop, const DonorPool& pool, std::size_t i, const OperatorConfig& cfg, Rng& rng);

std::vector<double> build_mutant(const Population& pop, const Donors& donors, double F, Mutation m);

struct Mutant {
    std::vector<double> v;
    std::size_t base_index = 0;
};

Mutant mutate(const Population& pop, std::size_t i, double F, const OperatorConfig& cfg, Rng& rng);

/// Random draws consumed by binomial crossover, separated out so that the
/// same mask randomness can be replayed under different crossover rates.
struct BinomialDraws {
    std::size_t forced = 0;
    std::vector<double> u;

    static BinomialDraws draw(std::size_t dim, Rng& rng);
};

std::vector<double> apply_binomial(std::span<const double> parent, std::span<const double> mutant, double C,
                                   const BinomialDraws& draws);

std::vector<double> crossover_bin(std::span<const double> parent, std::span<const double> mutant, double C, Rng& rng);
std::vector<double> crossover_exp(std::span<const double> parent, std::span<const double> mutant, double C, Rng& rng);
std::vector<double> crossover_sec(std::span<const double> parent, std::span<const double> mutant, double C, Rng& rng);
std::vector<double> crossover(Crossover kind, std::span<const double> parent, std::span<const double> mutant, double C,
                              Rng& rng);

/// Midpoint repair: a violated component moves halfway from the parent to
/// the violated bound.
std::vector<double> repair_bounds(std::vector<double> v, std::span<const double> parent, const Bounds& bounds);

/// Pairwise survivor selection. A trial replaces its parent when
/// f(u) <= f(x); replaced parents go to the archive, which is trimmed by
/// uniform random eviction.
Population select_and_archive(Population pop, std::span<const Individual> trials, Rng& rng);

} // namespace depcm::core
