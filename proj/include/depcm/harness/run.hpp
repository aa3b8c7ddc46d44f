#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "depcm/core/operators.hpp"
#include "depcm/pcm/control.hpp"
#include "depcm/problems.hpp"

namespace depcm::harness {

inline constexpr std::size_t target_count = 51;

/// 10^(2 - 0.2 k), k = 0..50: from 1e2 down to 1e-8.
const std::array<double, target_count>& target_set();

inline constexpr double final_target = 1e-8;

/// 5 D for D >= 4 and 20 for D <= 3.
std::size_t default_population(std::size_t dim) noexcept;

struct RestartSettings {
    double f_spread_tol = 1e-12;
    double x_spread_tol = 1e-12;
};

struct RunConfig {
    std::string pcm_id = "f05c09";
    core::OperatorConfig ops;
    std::shared_ptr<const problems::Problem> problem;
    std::size_t population_size = 0;      // 0: default_population(D)
    std::int64_t budget_multiplier = 10000; // budget = multiplier * D
    std::optional<std::int64_t> budget;   // explicit evaluation budget
    std::uint64_t seed = 1;
    std::optional<bool> restart;          // unset: on unless the method is time dependent
    RestartSettings restart_settings;
    pcm::Hyperparams hyperparams;
    std::string tag; // distinguishes runs that share a method id but not a driver

    std::size_t resolved_population() const;
    std::int64_t resolved_budget() const;
    bool restart_enabled() const;
    /// Stable textual form of every field that affects the run except the seed.
    std::string canonical() const;
    /// FNV-1a of canonical(), hex.
    std::string hash() const;
};

struct RunTrajectory {
    std::size_t dimension = 0;
    std::int64_t budget = 0;
    /// evaluation count at which each target was first reached, -1 if never
    std::array<std::int64_t, target_count> target_hits{};
    /// (evaluations, best-so-far error) on the geometric checkpoint grid
    std::vector<std::pair<std::int64_t, double>> checkpoints;
    std::vector<std::int64_t> restart_events;
    double final_error = 0.0;
    std::int64_t evaluations = 0;       // charged evaluations
    std::int64_t probe_evaluations = 0; // true evaluation cost (oracle probes included)
    std::int64_t generations = 0;

    std::optional<std::int64_t> hit(std::size_t k) const {
        return target_hits[k] < 0 ? std::nullopt : std::optional<std::int64_t>(target_hits[k]);
    }
};

/// Population collapse: objective spread or every coordinate spread below tolerance.
bool should_restart(const core::Population& pop, const RestartSettings& settings);

/// 100 geometrically spaced evaluation counts from n to budget.
std::vector<std::int64_t> checkpoint_grid(std::int64_t n, std::int64_t budget);

/// What a trial source hands back for member i.
struct TrialProposal {
    std::vector<double> x;
    pcm::ControlParameters params;
    std::optional<double> f; // set when the source already evaluated x
};

/// Produces trial vectors; the engine owns population, budget and logging.
class TrialSource {
public:
    virtual ~TrialSource() = default;
    virtual void restart(std::size_t n, int t_max, Rng& rng) = 0;
    virtual void begin_generation(const core::Population& pop, const pcm::GenerationContext& ctx, Rng& rng) = 0;
    virtual TrialProposal propose(const core::Population& pop, const core::DonorPool& pool, std::size_t i,
                                  Rng& rng) = 0;
    virtual void report(std::size_t i, const pcm::TrialOutcome& outcome, Rng& rng) = 0;
    virtual void end_generation(Rng& rng) = 0;
    /// evaluations spent beyond those charged by the engine
    virtual std::int64_t extra_evaluations() const { return 0; }
};

/// Trial source driving a catalog method through the standard operators.
class PcmTrialSource final : public TrialSource {
public:
    PcmTrialSource(const RunConfig& cfg);
    void restart(std::size_t n, int t_max, Rng& rng) override;
    void begin_generation(const core::Population& pop, const pcm::GenerationContext& ctx, Rng& rng) override;
    TrialProposal propose(const core::Population& pop, const core::DonorPool& pool, std::size_t i, Rng& rng) override;
    void report(std::size_t i, const pcm::TrialOutcome& outcome, Rng& rng) override;
    void end_generation(Rng& rng) override;

private:
    const RunConfig& cfg_;
    std::unique_ptr<pcm::ParameterControl> control_;
};

/// Generation loop shared by catalog runs and oracle runs.
RunTrajectory run_with(const RunConfig& cfg, TrialSource& source);

/// One independent run of the configured method.
RunTrajectory run(const RunConfig& cfg);

} // namespace depcm::harness
