#include "depcm/harness/records.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "depcm/problems.hpp"

namespace depcm::harness {

namespace {

using json = nlohmann::ordered_json;

double number_or_inf(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument(std::string("run record is missing '") + key + "'");
    return *it;
}

} // namespace

RunRecord make_record(const RunConfig& cfg, const RunResult& result) {
    RunRecord r;
    r.config_hash = cfg.hash();
    r.seed = result.seed;
    r.pcm = cfg.pcm_id;
    r.op = cfg.ops.name();
    if (cfg.problem) {
        r.problem = cfg.problem->id;
        r.category = std::string(problems::to_string(cfg.problem->category));
        r.dimension = cfg.problem->dimension;
    }
    r.run_index = result.run_index;
    r.status = result.ok ? "ok" : "error";
    r.error = result.error;
    r.trajectory = result.trajectory;
    if (!result.ok) r.trajectory.dimension = r.dimension;
    return r;
}

std::string to_json_line(const RunRecord& r) {
    const auto& t = r.trajectory;
    json j;
    j["config_hash"] = r.config_hash;
    j["seed"] = r.seed;
    j["pcm"] = r.pcm;
    j["operator"] = r.op;
    j["problem"] = r.problem;
    j["category"] = r.category;
    j["D"] = r.dimension;
    j["run"] = r.run_index;
    j["status"] = r.status;
    j["error"] = r.error;
    j["budget"] = t.budget;
    j["final_error"] = finite_or_null(t.final_error);
    json hits = json::array();
    for (auto h : t.target_hits) hits.push_back(h < 0 ? json() : json(h));
    j["target_hits"] = std::move(hits);
    j["restart_events"] = t.restart_events;
    json cps = json::array();
    for (const auto& [e, err] : t.checkpoints) cps.push_back(json::array({e, finite_or_null(err)}));
    j["checkpoints"] = std::move(cps);
    j["evaluations"] = t.evaluations;
    j["probe_evaluations"] = t.probe_evaluations;
    j["generations"] = t.generations;
    return j.dump();
}

RunRecord from_json_line(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("run record is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("run record is not an object");
    try {
        RunRecord r;
        r.config_hash = field(j, "config_hash").get<std::string>();
        r.seed = field(j, "seed").get<std::uint64_t>();
        r.pcm = field(j, "pcm").get<std::string>();
        r.op = field(j, "operator").get<std::string>();
        r.problem = field(j, "problem").get<std::string>();
        r.category = field(j, "category").get<std::string>();
        r.dimension = field(j, "D").get<std::size_t>();
        r.run_index = field(j, "run").get<std::size_t>();
        r.status = field(j, "status").get<std::string>();
        if (r.status != "ok" && r.status != "error") throw std::invalid_argument("status must be ok or error");
        r.error = field(j, "error").get<std::string>();
        auto& t = r.trajectory;
        t.dimension = r.dimension;
        t.budget = field(j, "budget").get<std::int64_t>();
        t.final_error = number_or_inf(field(j, "final_error"));
        const auto& hits = field(j, "target_hits");
        if (!hits.is_array() || hits.size() != target_count)
            throw std::invalid_argument("target_hits must hold " + std::to_string(target_count) + " entries");
        for (std::size_t k = 0; k < target_count; ++k)
            t.target_hits[k] = hits[k].is_null() ? -1 : hits[k].get<std::int64_t>();
        t.restart_events = field(j, "restart_events").get<std::vector<std::int64_t>>();
        for (const auto& cp : field(j, "checkpoints")) {
            if (!cp.is_array() || cp.size() != 2) throw std::invalid_argument("checkpoint must be a pair");
            t.checkpoints.emplace_back(cp[0].get<std::int64_t>(), number_or_inf(cp[1]));
        }
        t.evaluations = field(j, "evaluations").get<std::int64_t>();
        t.probe_evaluations = field(j, "probe_evaluations").get<std::int64_t>();
        t.generations = field(j, "generations").get<std::int64_t>();
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("run record has a field of the wrong type: ") + e.what());
    }
}

std::string validate_record_line(std::string_view line) {
    try {
        const auto r = from_json_line(line);
        if (r.status == "ok" && r.trajectory.checkpoints.size() != 100) return "an ok record needs 100 checkpoints";
        return {};
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
}

std::string validate_csv(std::string_view text, const std::vector<std::string>& header,
                         const std::vector<bool>& numeric) {
    auto split = [](std::string_view row) {
        std::vector<std::string_view> cells;
        std::size_t start = 0;
        for (;;) {
            const auto comma = row.find(',', start);
            cells.push_back(row.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return cells;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto row = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        const auto cells = split(row);
        if (cells.size() != header.size())
            return "line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) + " columns";
        if (line_no == 1) {
            for (std::size_t c = 0; c < header.size(); ++c)
                if (cells[c] != header[c]) return "header column " + std::to_string(c + 1) + " should be " + header[c];
            continue;
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!numeric[c]) continue;
            double v = 0.0;
            const auto cell = cells[c];
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
                return "line " + std::to_string(line_no) + ": column " + header[c] + " is not numeric";
        }
    }
    if (line_no == 0) return "empty file";
    return {};
}

} // namespace depcm::harness
