#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "depcm/gao.hpp"
#include "depcm/harness/records.hpp"
#include "depcm/harness/run.hpp"
#include "depcm/pcm/control.hpp"
#include "depcm/problems.hpp"

namespace depcm::experiment {

/// Malformed spec file; what() carries the file name and line.
class SpecError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Parsed experiment file:
///
///   [experiment]
///   pcms = shade, jade        # or: all
///   operators = rand/1/bin    # or: all16
///   dimensions = 2, 10
///   problems = suite          # or a list of function names
///   runs = 15
///   seed = 1
///   budget_multiplier = 10000
///   population = 0            # 0: default rule
///   restart = default         # default | on | off
///   output = results/demo
///
///   [hyper.shade]
///   H = 10
///
///   [gao]
///   candidates = 100
///   repeats = 10
///   score = trial             # or: survivor
struct ExperimentSpec {
    std::vector<std::string> pcms;
    std::vector<core::OperatorConfig> operators;
    std::vector<std::size_t> dimensions;
    std::vector<problems::Function> functions;
    std::size_t runs = 15;
    std::uint64_t seed = 1;
    std::int64_t budget_multiplier = 10000;
    std::size_t population = 0;
    std::optional<bool> restart;
    std::string output;
    std::map<std::string, pcm::Hyperparams> hyperparams;
    gao::OracleConfig oracle;
};

/// Values given on the command line; they win over the file.
struct Overrides {
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::int64_t> budget_multiplier;
};

ExperimentSpec parse_spec(std::string_view text, const std::string& source = "<spec>");
ExperimentSpec load_spec(const std::filesystem::path& file);
void apply(ExperimentSpec& spec, const Overrides& overrides);

/// One (method, operator, problem, dimension) cell of the experiment.
struct ConfigGroup {
    harness::RunConfig config;
    std::string directory; // relative to the output root
};

/// Expands the spec in a fixed order: dimension, problem, method, operator.
/// Problems are built once and shared between groups.
std::vector<ConfigGroup> expand(const ExperimentSpec& spec);

/// Output directory name of an operator, e.g. rand-1-bin.
std::string operator_dirname(const core::OperatorConfig& ops);

/// Output root: the spec's output if set, else $DEPCM_OUTPUT_ROOT/<stem>,
/// else results/<stem>.
std::filesystem::path resolve_output(const ExperimentSpec& spec, const std::filesystem::path& spec_file);

enum ExitCode { exit_ok = 0, exit_run_failures = 1, exit_config_error = 2 };

struct RunSummary {
    std::size_t groups = 0;
    std::size_t runs = 0;
    std::size_t failures = 0;
    std::filesystem::path output;
};

/// Executes every group and writes runs.jsonl files, the suite manifest and
/// manifest.json under `root`. With `oracle` set, groups run under GAODE.
RunSummary execute(const std::vector<ConfigGroup>& groups, const ExperimentSpec& spec,
                   const std::filesystem::path& root, std::size_t jobs, bool oracle);

/// Reads every runs.jsonl under `dir`.
std::vector<harness::RunRecord> load_records(const std::filesystem::path& dir);

enum class AnalyzeMode { ecdf, aps };

AnalyzeMode parse_mode(std::string_view mode);

/// Writes ECDF curves (one csv per dimension, operator and method) or APS
/// tables (one csv per dimension and operator, plus a per-group breakdown)
/// under `out`. Returns the files written.
std::vector<std::filesystem::path> analyze(const std::vector<harness::RunRecord>& records, AnalyzeMode mode,
                                           const std::filesystem::path& out);

/// Registry table with taxonomy columns and default hyperparameters.
void print_catalog(std::ostream& out);

int cmd_run(const std::filesystem::path& spec_file, const Overrides& overrides, std::size_t jobs,
            std::ostream& out, std::ostream& err);
int cmd_gaode(const std::filesystem::path& spec_file, const Overrides& overrides, std::size_t jobs,
              std::ostream& out, std::ostream& err);
int cmd_analyze(const std::filesystem::path& dir, std::string_view mode, const std::optional<std::filesystem::path>& out_dir,
                std::ostream& out, std::ostream& err);
int cmd_list(std::ostream& out);

} // namespace depcm::experiment
