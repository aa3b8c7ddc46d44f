#pragma once

// Checks shared by the unit tests and the acceptance binary. Each returns
// the list of violations it found; an empty list means the check passed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace depcm::checks {

struct Report {
    std::vector<std::string> failures;
    std::size_t cases = 0;

    bool ok() const { return failures.empty(); }
    void fail(std::string msg) {
        if (failures.size() < 50) failures.push_back(std::move(msg));
        else if (failures.size() == 50) failures.push_back("...");
    }
    void merge(const Report& other) {
        cases += other.cases;
        for (const auto& f : other.failures) fail(f);
    }
};

/// Drives every runnable method through `generations` synthetic generations
/// and checks ranges, no-op updates, cyclic memory, the cDE simplex,
/// inheritance and trace determinism.
Report catalog_properties(std::size_t generations, std::uint64_t seed);

/// The hand-checked examples: SaDE window median, RDE boundaries, CoDE
/// pairs, EPSDE pools, SWDE extremes, DETVSF endpoints.
Report worked_examples();

/// Lehmer, power and weighted means against long-double brute force.
Report mean_oracles(std::size_t sets, std::uint64_t seed, double tolerance);

/// rank_sum_test against enumeration of every rank assignment, sizes 2..5.
Report rank_sum_oracle(std::size_t cases, std::uint64_t seed);

/// ecdf and aps on synthetic trajectories with hand-counted answers.
Report pipeline_examples();

} // namespace depcm::checks
