#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "depcm/harness/run.hpp"

namespace depcm::gao {

/// What a candidate is scored on in each repeat: the trial's objective value,
/// or the value that survives selection, min(f(x), f(u)).
enum class OracleScore { trial, survivor };

struct OracleConfig {
    std::size_t candidates = 100; // K
    std::size_t repeats = 10;     // R
    OracleScore score = OracleScore::trial;

    void validate() const;
};

struct OracleStep {
    double F = 0.0;
    double C = 0.0;
    std::vector<double> trial; // committed trial, from the first repeat's draws
    double f_trial = 0.0;
    std::size_t selected = 0;
    std::vector<double> scores;                  // mean f(u) over the repeats, per candidate
    std::vector<std::pair<double, double>> pairs; // candidate (F, C)
    std::int64_t probes = 0;                     // objective evaluations spent
};

/// Greedy one-step lookahead for member i under rand/1/bin. Candidates share
/// donor indices and crossover draws within each repeat; the lowest mean
/// score wins, ties going to the lowest candidate index.
OracleStep oracle_step(const core::Population& pop, std::size_t i, const OracleConfig& ocfg,
                       const problems::Problem& problem, Rng& rng);

/// Trial source that replaces parameter control with oracle_step.
class OracleTrialSource final : public harness::TrialSource {
public:
    OracleTrialSource(const harness::RunConfig& cfg, OracleConfig ocfg);
    void restart(std::size_t, int, Rng&) override {}
    void begin_generation(const core::Population&, const pcm::GenerationContext&, Rng&) override {}
    harness::TrialProposal propose(const core::Population& pop, const core::DonorPool& pool, std::size_t i,
                                   Rng& rng) override;
    void report(std::size_t, const pcm::TrialOutcome&, Rng&) override {}
    void end_generation(Rng&) override {}
    std::int64_t extra_evaluations() const override { return extra_; }

private:
    const harness::RunConfig& cfg_;
    OracleConfig ocfg_;
    std::int64_t extra_ = 0;
};

/// Harness run driven by the oracle. `evaluations` counts the initial
/// population plus committed trials; `probe_evaluations` counts everything.
/// Throws ConfigError for any operator other than rand/1/bin.
harness::RunTrajectory gaode_run(const harness::RunConfig& cfg, const OracleConfig& ocfg = {});

} // namespace depcm::gao
