#include "depcm/harness/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "depcm/rng.hpp"

namespace depcm::harness {

std::uint64_t run_seed(std::uint64_t master, std::size_t config_index, std::size_t run_index) {
    return derive_seed(master, config_index, run_index);
}

std::vector<RunResult> run_batch(const std::vector<RunConfig>& configs, std::size_t runs, std::uint64_t master_seed,
                                 std::size_t jobs, const Runner& runner) {
    const std::size_t total = configs.size() * runs;
    std::vector<RunResult> results(total);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            auto& res = results[k];
            res.config_index = k / runs;
            res.run_index = k % runs;
            res.seed = run_seed(master_seed, res.config_index, res.run_index);
            RunConfig cfg = configs[res.config_index];
            cfg.seed = res.seed;
            try {
                res.trajectory = runner(cfg);
                res.ok = true;
            } catch (const std::exception& e) {
                res.error = e.what();
            }
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(total, 1));
    if (threads == 1) {
        work();
        return results;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return results;
}

} // namespace depcm::harness
