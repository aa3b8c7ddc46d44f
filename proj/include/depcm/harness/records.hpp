#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "depcm/harness/batch.hpp"

namespace depcm::harness {

/// One line of a runs.jsonl file.
struct RunRecord {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string pcm;
    std::string op;
    std::string problem;
    std::string category;
    std::size_t dimension = 0;
    std::size_t run_index = 0;
    std::string status = "ok"; // "ok" or "error"
    std::string error;
    RunTrajectory trajectory;
};

RunRecord make_record(const RunConfig& cfg, const RunResult& result);

/// Single-line JSON, keys in a fixed order, numbers printed round-trip exact.
std::string to_json_line(const RunRecord& record);

/// Inverse of to_json_line. Throws std::invalid_argument on schema violations.
RunRecord from_json_line(std::string_view line);

/// Empty when the line is a valid run record, otherwise a description of the problem.
std::string validate_record_line(std::string_view line);

/// Checks a CSV text against its expected header and column count, and that
/// every non-header cell that should be numeric parses as a number.
/// Returns an empty string when valid.
std::string validate_csv(std::string_view text, const std::vector<std::string>& header,
                         const std::vector<bool>& numeric);

inline const std::vector<std::string> ecdf_header{"budget_per_D", "proportion"};
inline const std::vector<std::string> aps_header{"algorithm", "problem_group", "aps"};

} // namespace depcm::harness
