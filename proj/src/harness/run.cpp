#include "depcm/harness/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "depcm/pcm/registry.hpp"

namespace depcm::harness {

const std::array<double, target_count>& target_set() {
    static const std::array<double, target_count> targets = [] {
        std::array<double, target_count> t{};
        for (std::size_t k = 0; k < target_count; ++k) t[k] = std::pow(10.0, 2.0 - 0.2 * static_cast<double>(k));
        return t;
    }();
    return targets;
}

std::size_t default_population(std::size_t dim) noexcept { return dim <= 3 ? 20 : 5 * dim; }

std::size_t RunConfig::resolved_population() const {
    if (population_size > 0) return population_size;
    if (!problem) throw ConfigError("run configuration has no problem");
    return default_population(problem->dimension);
}

std::int64_t RunConfig::resolved_budget() const {
    if (budget) return *budget;
    if (!problem) throw ConfigError("run configuration has no problem");
    return budget_multiplier * static_cast<std::int64_t>(problem->dimension);
}

bool RunConfig::restart_enabled() const {
    if (restart) return *restart;
    return !pcm::find(pcm_id).time_dependent;
}

std::string RunConfig::canonical() const {
    std::ostringstream out;
    out.precision(17);
    out << "pcm=" << pcm_id << ";op=" << ops.name() << ";p=" << ops.p_best_fraction
        << ";archive=" << (ops.archive_cap ? std::to_string(*ops.archive_cap) : std::string("N"));
    if (problem)
        out << ";problem=" << problem->id << ";D=" << problem->dimension << ";shift=" << problem->shift_seed
            << ";rotation=" << (problem->rotation_seed ? std::to_string(*problem->rotation_seed) : std::string("-"));
    out << ";N=" << resolved_population() << ";budget=" << resolved_budget() << ";restart=" << restart_enabled()
        << ";ftol=" << restart_settings.f_spread_tol << ";xtol=" << restart_settings.x_spread_tol;
    for (const auto& [k, v] : hyperparams) out << ";" << k << "=" << v;
    if (!tag.empty()) out << ";tag=" << tag;
    return out.str();
}

std::string RunConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool should_restart(const core::Population& pop, const RestartSettings& settings) {
    if (pop.members.empty()) return false;
    double f_lo = pop.members.front().f, f_hi = f_lo;
    for (const auto& m : pop.members) {
        f_lo = std::min(f_lo, m.f);
        f_hi = std::max(f_hi, m.f);
    }
    if (f_hi - f_lo < settings.f_spread_tol) return true;
    const std::size_t dim = pop.dimension();
    for (std::size_t j = 0; j < dim; ++j) {
        double lo = pop.members.front().x[j], hi = lo;
        for (const auto& m : pop.members) {
            lo = std::min(lo, m.x[j]);
            hi = std::max(hi, m.x[j]);
        }
        if (hi - lo >= settings.x_spread_tol) return false;
    }
    return true;
}

std::vector<std::int64_t> checkpoint_grid(std::int64_t n, std::int64_t budget) {
    constexpr int points = 100;
    std::vector<std::int64_t> grid(points);
    const double lo = std::log(static_cast<double>(std::max<std::int64_t>(n, 1)));
    const double hi = std::log(static_cast<double>(std::max(budget, n)));
    for (int k = 0; k < points; ++k)
        grid[k] = static_cast<std::int64_t>(std::llround(std::exp(lo + (hi - lo) * k / (points - 1))));
    grid.front() = n;
    grid.back() = std::max(budget, n);
    return grid;
}

// ---------------------------------------------------------------- PcmTrialSource

PcmTrialSource::PcmTrialSource(const RunConfig& cfg) : cfg_(cfg), control_(pcm::create(cfg.pcm_id)) {}

void PcmTrialSource::restart(std::size_t n, int t_max, Rng& rng) { control_->initialize(n, t_max, cfg_.hyperparams, rng); }

void PcmTrialSource::begin_generation(const core::Population&, const pcm::GenerationContext& ctx, Rng& rng) {
    control_->begin_generation(ctx, rng);
}

TrialProposal PcmTrialSource::propose(const core::Population& pop, const core::DonorPool& pool, std::size_t i,
                                      Rng& rng) {
    const auto donors = core::select_donors(pop, pool, i, cfg_.ops, rng);
    const auto params = control_->sample(i, donors.base_index, rng);
    const auto& parent = pop.members[i].x;
    auto mutant = core::repair_bounds(core::build_mutant(pop, donors, params.F, cfg_.ops.mutation), parent,
                                      cfg_.problem->bounds);
    return {core::crossover(cfg_.ops.crossover, parent, mutant, params.C, rng), params, std::nullopt};
}

void PcmTrialSource::report(std::size_t i, const pcm::TrialOutcome& outcome, Rng& rng) {
    control_->report(i, outcome, rng);
}

void PcmTrialSource::end_generation(Rng& rng) { control_->end_generation(rng); }

// ---------------------------------------------------------------- engine

namespace {

class Recorder {
public:
    Recorder(const problems::Problem& problem, std::int64_t n, std::int64_t budget)
        : problem_(problem), budget_(budget), grid_(checkpoint_grid(n, budget)) {
        traj_.dimension = problem.dimension;
        traj_.budget = budget;
        traj_.target_hits.fill(-1);
        traj_.final_error = std::numeric_limits<double>::infinity();
    }

    bool exhausted() const { return traj_.evaluations >= budget_; }
    bool solved() const { return traj_.final_error <= final_target; }
    bool done() const { return exhausted() || solved(); }

    double evaluate(std::span<const double> x) {
        const double f = problem_.evaluate(x);
        charge(f);
        return f;
    }

    void charge(double f) {
        ++traj_.evaluations;
        const double error = f - problem_.f_opt;
        if (error < traj_.final_error) {
            traj_.final_error = error;
            const auto& targets = target_set();
            for (std::size_t k = next_target_; k < target_count && error <= targets[k]; ++k) {
                traj_.target_hits[k] = traj_.evaluations;
                next_target_ = k + 1;
            }
        }
        while (next_checkpoint_ < grid_.size() && grid_[next_checkpoint_] <= traj_.evaluations)
            traj_.checkpoints.emplace_back(grid_[next_checkpoint_++], traj_.final_error);
    }

    RunTrajectory finish(std::int64_t extra, std::int64_t generations) {
        while (next_checkpoint_ < grid_.size()) traj_.checkpoints.emplace_back(grid_[next_checkpoint_++], traj_.final_error);
        traj_.probe_evaluations = traj_.evaluations + extra;
        traj_.generations = generations;
        return std::move(traj_);
    }

    RunTrajectory& trajectory() { return traj_; }

private:
    const problems::Problem& problem_;
    std::int64_t budget_;
    std::vector<std::int64_t> grid_;
    std::size_t next_checkpoint_ = 0;
    std::size_t next_target_ = 0;
    RunTrajectory traj_;
};

// samples and evaluates a fresh population; false if the budget ran out
bool initialize_population(core::Population& pop, std::size_t n, const problems::Problem& problem, Recorder& rec,
                           Rng& rng) {
    pop.members.clear();
    pop.archive.clear();
    pop.generation = 1;
    const auto& b = problem.bounds;
    for (std::size_t i = 0; i < n; ++i) {
        core::Individual ind;
        ind.x.resize(problem.dimension);
        for (std::size_t j = 0; j < problem.dimension; ++j) ind.x[j] = rng.uniform(b.lower[j], b.upper[j]);
        pop.members.push_back(std::move(ind));
    }
    for (auto& ind : pop.members) {
        if (rec.done()) return false;
        ind.f = rec.evaluate(ind.x);
    }
    return !rec.done();
}

int generations_left(std::int64_t budget, std::int64_t used, std::size_t n) {
    const auto left = (budget - used) / static_cast<std::int64_t>(n);
    return static_cast<int>(std::clamp<std::int64_t>(left, 1, std::numeric_limits<int>::max()));
}

} // namespace

RunTrajectory run_with(const RunConfig& cfg, TrialSource& source) {
    if (!cfg.problem) throw ConfigError("run configuration has no problem");
    const auto& problem = *cfg.problem;
    const std::size_t n = cfg.resolved_population();
    const std::int64_t budget = cfg.resolved_budget();
    if (budget < static_cast<std::int64_t>(n))
        throw ConfigError("budget " + std::to_string(budget) + " is below the population size " + std::to_string(n));
    cfg.ops.validate(n);
    if (n < core::minimum_population(cfg.ops.mutation))
        throw ConfigError(cfg.ops.name() + " needs a population of at least " +
                          std::to_string(core::minimum_population(cfg.ops.mutation)));
    const bool restarts = cfg.restart_enabled();

    Rng rng(cfg.seed);
    Recorder rec(problem, static_cast<std::int64_t>(n), budget);
    core::Population pop;
    pop.archive_cap = cfg.ops.archive_cap.value_or(n);

    std::int64_t generations = 0;
    bool alive = initialize_population(pop, n, problem, rec, rng);
    if (alive) source.restart(n, generations_left(budget, rec.trajectory().evaluations, n), rng);

    int t = 1;
    std::vector<core::Individual> trials(n);
    std::vector<pcm::TrialOutcome> outcomes(n);
    while (alive) {
        const int t_max = generations_left(budget, rec.trajectory().evaluations, n) + t - 1;
        const auto ctx = pcm::GenerationContext::build(pop.members, t, std::max(t_max, t));
        const auto pool = core::DonorPool::build(pop);
        source.begin_generation(pop, ctx, rng);

        for (std::size_t i = 0; i < n && alive; ++i) {
            auto proposal = source.propose(pop, pool, i, rng);
            auto& trial = trials[i];
            trial.x = std::move(proposal.x);
            trial.assigned_F = proposal.params.F;
            trial.assigned_C = proposal.params.C;
            if (proposal.f) {
                trial.f = *proposal.f;
                rec.charge(trial.f);
            } else {
                trial.f = rec.evaluate(trial.x);
            }
            outcomes[i] = pcm::TrialOutcome::make(pop.members[i].f, trial.f, proposal.params);
            // stop once the budget is spent or the final target is reached
            if (rec.done()) alive = false;
        }
        if (!alive) break;

        for (std::size_t i = 0; i < n; ++i) source.report(i, outcomes[i], rng);
        source.end_generation(rng);
        pop = core::select_and_archive(std::move(pop), trials, rng);
        ++generations;
        ++t;

        if (restarts && should_restart(pop, cfg.restart_settings)) {
            rec.trajectory().restart_events.push_back(rec.trajectory().evaluations);
            alive = initialize_population(pop, n, problem, rec, rng);
            if (alive) source.restart(n, generations_left(budget, rec.trajectory().evaluations, n), rng);
            t = 1;
        }
    }
    return rec.finish(source.extra_evaluations(), generations);
}

RunTrajectory run(const RunConfig& cfg) {
    PcmTrialSource source(cfg);
    return run_with(cfg, source);
}

} // namespace depcm::harness
