#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "depcm/harness/run.hpp"

namespace depcm::harness {

struct RunResult {
    std::size_t config_index = 0;
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    RunTrajectory trajectory;
};

using Runner = std::function<RunTrajectory(const RunConfig&)>;

/// Seed of run r of configuration c under a master seed.
std::uint64_t run_seed(std::uint64_t master, std::size_t config_index, std::size_t run_index);

/// Runs every configuration `runs` times on `jobs` threads. A failing run is
/// recorded with ok = false and does not stop the others. Results come back
/// ordered by (config, run) whatever the thread count.
std::vector<RunResult> run_batch(const std::vector<RunConfig>& configs, std::size_t runs, std::uint64_t master_seed,
                                 std::size_t jobs, const Runner& runner = run);

} // namespace depcm::harness
