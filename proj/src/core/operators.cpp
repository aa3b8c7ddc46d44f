#include "depcm/core/operators.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>

namespace depcm::core {

namespace {

bool taken(const Donors& d, std::size_t idx) {
    if (idx == d.target) return true;
    for (std::size_t k = 0; k < d.count; ++k)
        if (d.r[k] == idx) return true;
    return false;
}

// draws a fresh index in [0, limit) distinct from the target and all drawn donors
void draw_distinct(Donors& d, std::size_t limit, Rng& rng) {
    std::size_t idx;
    do {
        idx = rng.index(limit);
    } while (taken(d, idx));
    d.r[d.count++] = idx;
}

void add_scaled_difference(std::vector<double>& v, double F, const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += F * (a[j] - b[j]);
}

} // namespace

DonorPool DonorPool::build(const Population& pop) {
    DonorPool pool;
    pool.order.resize(pop.size());
    std::iota(pool.order.begin(), pool.order.end(), std::size_t{0});
    std::stable_sort(pool.order.begin(), pool.order.end(),
                     [&](std::size_t a, std::size_t b) { return pop.members[a].f < pop.members[b].f; });
    pool.best = pool.order.empty() ? 0 : pool.order.front();
    return pool;
}

std::size_t minimum_population(Mutation m) noexcept {
    switch (m) {
    case Mutation::rand_1: return 4;
    case Mutation::rand_2: return 6;
    case Mutation::best_1: return 3;
    case Mutation::best_2: return 5;
    case Mutation::current_to_rand_1: return 4;
    case Mutation::current_to_best_1: return 3;
    case Mutation::current_to_pbest_1: return 3;
    case Mutation::rand_to_pbest_1: return 4;
    }
    return 6;
}

Donors select_donors(const Population& pop, const DonorPool& pool, std::size_t i, const OperatorConfig& cfg,
                     Rng& rng) {
    const std::size_t n = pop.size();
    if (n < minimum_population(cfg.mutation))
        throw ConfigError(std::string(to_string(cfg.mutation)) + " needs a population of at least " +
                          std::to_string(minimum_population(cfg.mutation)) + ", got " + std::to_string(n));
    Donors d;
    d.target = i;
    d.best = pool.best;
    const std::size_t pooled = n + pop.archive.size();

    switch (cfg.mutation) {
    case Mutation::rand_1:
        for (int k = 0; k < 3; ++k) draw_distinct(d, n, rng);
        d.base_index = d.r[0];
        break;
    case Mutation::rand_2:
        for (int k = 0; k < 5; ++k) draw_distinct(d, n, rng);
        d.base_index = d.r[0];
        break;
    case Mutation::best_1:
        for (int k = 0; k < 2; ++k) draw_distinct(d, n, rng);
        d.base_index = d.best;
        break;
    case Mutation::best_2:
        for (int k = 0; k < 4; ++k) draw_distinct(d, n, rng);
        d.base_index = d.best;
        break;
    case Mutation::current_to_rand_1:
        for (int k = 0; k < 3; ++k) draw_distinct(d, n, rng);
        d.base_index = i;
        break;
    case Mutation::current_to_best_1:
        for (int k = 0; k < 2; ++k) draw_distinct(d, n, rng);
        d.base_index = i;
        break;
    case Mutation::current_to_pbest_1:
        d.pbest = pool.order[rng.index(cfg.pbest_count(n))];
        draw_distinct(d, n, rng);
        draw_distinct(d, pooled, rng);
        d.base_index = i;
        break;
    case Mutation::rand_to_pbest_1:
        d.pbest = pool.order[rng.index(cfg.pbest_count(n))];
        draw_distinct(d, n, rng);
        draw_distinct(d, n, rng);
        draw_distinct(d, pooled, rng);
        d.base_index = d.r[0];
        break;
    }

#ifndef NDEBUG
    for (std::size_t a = 0; a < d.count; ++a) {
        assert(d.r[a] != i);
        for (std::size_t b = a + 1; b < d.count; ++b) assert(d.r[a] != d.r[b]);
    }
#endif
    return d;
}

std::vector<double> build_mutant(const Population& pop, const Donors& d, double F, Mutation m) {
    auto x = [&](std::size_t idx) -> const std::vector<double>& { return pop.pooled(idx).x; };
    const auto& xi = pop.members[d.target].x;
    std::vector<double> v;

    switch (m) {
    case Mutation::rand_1:
        v = x(d.r[0]);
        add_scaled_difference(v, F, x(d.r[1]), x(d.r[2]));
        break;
    case Mutation::rand_2:
        v = x(d.r[0]);
        add_scaled_difference(v, F, x(d.r[1]), x(d.r[2]));
        add_scaled_difference(v, F, x(d.r[3]), x(d.r[4]));
        break;
    case Mutation::best_1:
        v = x(d.best);
        add_scaled_difference(v, F, x(d.r[0]), x(d.r[1]));
        break;
    case Mutation::best_2:
        v = x(d.best);
        add_scaled_difference(v, F, x(d.r[0]), x(d.r[1]));
        add_scaled_difference(v, F, x(d.r[2]), x(d.r[3]));
        break;
    case Mutation::current_to_rand_1:
        v = xi;
        add_scaled_difference(v, F, x(d.r[0]), xi);
        add_scaled_difference(v, F, x(d.r[1]), x(d.r[2]));
        break;
    case Mutation::current_to_best_1:
        v = xi;
        add_scaled_difference(v, F, x(d.best), xi);
        add_scaled_difference(v, F, x(d.r[0]), x(d.r[1]));
        break;
    case Mutation::current_to_pbest_1:
        v = xi;
        add_scaled_difference(v, F, x(d.pbest), xi);
        add_scaled_difference(v, F, x(d.r[0]), x(d.r[1]));
        break;
    case Mutation::rand_to_pbest_1:
        v = x(d.r[0]);
        add_scaled_difference(v, F, x(d.pbest), x(d.r[0]));
        add_scaled_difference(v, F, x(d.r[1]), x(d.r[2]));
        break;
    }
    return v;
}

Mutant mutate(const Population& pop, std::size_t i, double F, const OperatorConfig& cfg, Rng& rng) {
    const auto pool = DonorPool::build(pop);
    const auto donors = select_donors(pop, pool, i, cfg, rng);
    return {build_mutant(pop, donors, F, cfg.mutation), donors.base_index};
}

BinomialDraws BinomialDraws::draw(std::size_t dim, Rng& rng) {
    BinomialDraws d;
    d.forced = rng.index(dim);
    d.u.resize(dim);
    for (auto& u : d.u) u = rng.uniform();
    return d;
}

std::vector<double> apply_binomial(std::span<const double> parent, std::span<const double> mutant, double C,
                                   const BinomialDraws& draws) {
    std::vector<double> trial(parent.begin(), parent.end());
    for (std::size_t j = 0; j < trial.size(); ++j)
        if (j == draws.forced || draws.u[j] < C) trial[j] = mutant[j];
    return trial;
}

std::vector<double> crossover_bin(std::span<const double> parent, std::span<const double> mutant, double C, Rng& rng) {
    return apply_binomial(parent, mutant, C, BinomialDraws::draw(parent.size(), rng));
}

namespace {

// block length L with P(L >= k) = C^(k-1), capped at dim
std::size_t geometric_block(std::size_t dim, double C, Rng& rng) {
    std::size_t len = 1;
    while (len < dim && rng.uniform() < C) ++len;
    return len;
}

} // namespace

std::vector<double> crossover_exp(std::span<const double> parent, std::span<const double> mutant, double C, Rng& rng) {
    const std::size_t dim = parent.size();
    std::vector<double> trial(parent.begin(), parent.end());
    const std::size_t start = rng.index(dim);
    const std::size_t len = geometric_block(dim, C, rng);
    for (std::size_t l = 0; l < len; ++l) {
        const std::size_t j = (start + l) % dim;
        trial[j] = mutant[j];
    }
    return trial;
}

std::vector<double> crossover_sec(std::span<const double> parent, std::span<const double> mutant, double C, Rng& rng) {
    const std::size_t dim = parent.size();
    std::vector<std::size_t> perm(dim);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(perm);
    std::vector<double> trial(parent.begin(), parent.end());
    const std::size_t len = geometric_block(dim, C, rng);
    for (std::size_t l = 0; l < len; ++l) trial[perm[l]] = mutant[perm[l]];
    return trial;
}

std::vector<double> crossover(Crossover kind, std::span<const double> parent, std::span<const double> mutant, double C,
                              Rng& rng) {
    switch (kind) {
    case Crossover::bin: return crossover_bin(parent, mutant, C, rng);
    case Crossover::exp: return crossover_exp(parent, mutant, C, rng);
    case Crossover::sec: return crossover_sec(parent, mutant, C, rng);
    }
    return {};
}

std::vector<double> repair_bounds(std::vector<double> v, std::span<const double> parent, const Bounds& bounds) {
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] < bounds.lower[j])
            v[j] = 0.5 * (parent[j] + bounds.lower[j]);
        else if (v[j] > bounds.upper[j])
            v[j] = 0.5 * (parent[j] + bounds.upper[j]);
        else if (v[j] != v[j]) // NaN from a degenerate scale factor
            v[j] = parent[j];
    }
    return v;
}

Population select_and_archive(Population pop, std::span<const Individual> trials, Rng& rng) {
    assert(trials.size() == pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (trials[i].f <= pop.members[i].f) {
            if (pop.archive_cap > 0) pop.archive.push_back(std::move(pop.members[i]));
            pop.members[i] = trials[i];
        }
    }
    while (pop.archive.size() > pop.archive_cap) {
        const std::size_t victim = rng.index(pop.archive.size());
        pop.archive[victim] = std::move(pop.archive.back());
        pop.archive.pop_back();
    }
    ++pop.generation;
    return pop;
}

} // namespace depcm::core
