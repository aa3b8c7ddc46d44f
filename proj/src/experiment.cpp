#include "depcm/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "depcm/harness/analysis.hpp"
#include "depcm/harness/batch.hpp"
#include "depcm/pcm/registry.hpp"

namespace depcm::experiment {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in{std::string(s)};
    while (std::getline(in, item, ',')) {
        auto t = trim(item);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

struct Entry {
    std::string value;
    int line = 0;
};

// section -> key -> entry
using Sections = std::map<std::string, std::map<std::string, Entry>>;

Sections read_sections(std::string_view text, const std::string& source) {
    Sections sections;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    auto fail = [&](const std::string& msg) { throw SpecError(source + ":" + std::to_string(line_no) + ": " + msg); };
    while (std::getline(in, raw)) {
        ++line_no;
        const auto comment = raw.find_first_of("#;");
        const auto line = trim(std::string_view(raw).substr(0, comment));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (section.empty()) fail("empty section name");
            sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value', got '" + line + "'");
        if (section.empty()) fail("key outside of any section");
        const auto key = trim(std::string_view(line).substr(0, eq));
        if (key.empty()) fail("missing key");
        auto& slot = sections[section];
        if (slot.count(key)) fail("duplicate key '" + key + "'");
        slot[key] = {trim(std::string_view(line).substr(eq + 1)), line_no};
    }
    return sections;
}

template <typename T>
T parse_number(const Entry& e, const std::string& key, const std::string& source) {
    T v{};
    const auto& s = e.value;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw SpecError(source + ":" + std::to_string(e.line) + ": " + key + " expects a number, got '" + s + "'");
    return v;
}

std::string json_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_text(const fs::path& file, const std::string& text) {
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << text;
}

void check_csv(const fs::path& file, const std::string& text, const std::vector<std::string>& header,
               const std::vector<bool>& numeric) {
    const auto problem = harness::validate_csv(text, header, numeric);
    if (!problem.empty()) throw std::logic_error("schema check failed for " + file.string() + ": " + problem);
}

std::size_t catalog_rank(const std::string& id) {
    const auto& cat = pcm::catalog();
    for (std::size_t k = 0; k < cat.size(); ++k)
        if (cat[k].id == id) return k;
    return cat.size();
}

bool method_before(const std::string& a, const std::string& b) {
    const auto ra = catalog_rank(a), rb = catalog_rank(b);
    return ra != rb ? ra < rb : a < b;
}

} // namespace

ExperimentSpec parse_spec(std::string_view text, const std::string& source) {
    const auto sections = read_sections(text, source);
    ExperimentSpec spec;
    auto where = [&](const Entry& e) { return source + ":" + std::to_string(e.line) + ": "; };

    auto exp_it = sections.find("experiment");
    if (exp_it == sections.end()) throw SpecError(source + ": missing [experiment] section");
    const auto& exp = exp_it->second;

    for (const auto& [key, e] : exp) {
        try {
            if (key == "pcms") {
                if (e.value == "all")
                    spec.pcms = pcm::runnable_ids();
                else
                    for (const auto& id : split_list(e.value)) spec.pcms.push_back(pcm::find(id).id);
            } else if (key == "operators") {
                if (e.value == "all16")
                    spec.operators = core::OperatorConfig::all16();
                else
                    for (const auto& name : split_list(e.value)) spec.operators.push_back(core::OperatorConfig::parse(name));
            } else if (key == "dimensions") {
                for (const auto& d : split_list(e.value)) {
                    const auto dim = parse_number<std::size_t>({d, e.line}, key, source);
                    if (dim == 0) throw ConfigError("dimensions must be positive");
                    spec.dimensions.push_back(dim);
                }
            } else if (key == "problems") {
                if (e.value == "suite")
                    spec.functions.assign(std::begin(problems::all_functions), std::end(problems::all_functions));
                else
                    for (const auto& name : split_list(e.value)) spec.functions.push_back(problems::parse_function(name));
            } else if (key == "runs") {
                spec.runs = parse_number<std::size_t>(e, key, source);
                if (spec.runs == 0) throw ConfigError("runs must be positive");
            } else if (key == "seed") {
                spec.seed = parse_number<std::uint64_t>(e, key, source);
            } else if (key == "budget_multiplier") {
                spec.budget_multiplier = parse_number<std::int64_t>(e, key, source);
                if (spec.budget_multiplier <= 0) throw ConfigError("budget_multiplier must be positive");
            } else if (key == "population") {
                spec.population = parse_number<std::size_t>(e, key, source);
            } else if (key == "restart") {
                if (e.value == "on") spec.restart = true;
                else if (e.value == "off") spec.restart = false;
                else if (e.value != "default") throw ConfigError("restart must be default, on or off");
            } else if (key == "output") {
                spec.output = e.value;
            } else {
                throw ConfigError("unknown key '" + key +
                                  "' (valid: pcms, operators, dimensions, problems, runs, seed, budget_multiplier, "
                                  "population, restart, output)");
            }
        } catch (const SpecError&) {
            throw;
        } catch (const ConfigError& err) {
            throw SpecError(where(e) + err.what());
        }
    }
    if (spec.dimensions.empty()) throw SpecError(source + ": [experiment] needs a dimensions key");
    if (spec.functions.empty())
        spec.functions.assign(std::begin(problems::all_functions), std::end(problems::all_functions));

    for (const auto& [name, keys] : sections) {
        if (name == "experiment") continue;
        if (name == "gao") {
            for (const auto& [key, e] : keys) {
                if (key == "candidates")
                    spec.oracle.candidates = parse_number<std::size_t>(e, key, source);
                else if (key == "repeats")
                    spec.oracle.repeats = parse_number<std::size_t>(e, key, source);
                else if (key == "score" && (e.value == "trial" || e.value == "survivor"))
                    spec.oracle.score = e.value == "trial" ? gao::OracleScore::trial : gao::OracleScore::survivor;
                else if (key == "score")
                    throw SpecError(where(e) + "score must be trial or survivor");
                else
                    throw SpecError(where(e) + "unknown key '" + key + "' (valid: candidates, repeats, score)");
                try {
                    spec.oracle.validate();
                } catch (const ConfigError& err) {
                    throw SpecError(where(e) + err.what());
                }
            }
            continue;
        }
        if (name.rfind("hyper.", 0) == 0) {
            const auto id = name.substr(6);
            pcm::Hyperparams values;
            const int first_line = keys.empty() ? 0 : keys.begin()->second.line;
            const pcm::PcmInfo* info = nullptr;
            try {
                info = &pcm::find(id);
            } catch (const ConfigError& err) {
                throw SpecError(source + ":" + std::to_string(first_line) + ": " + err.what());
            }
            for (const auto& [key, e] : keys) {
                values[key] = parse_number<double>(e, key, source);
                try {
                    pcm::resolve_hyperparams(*info, {{key, values[key]}});
                } catch (const ConfigError& err) {
                    throw SpecError(where(e) + err.what());
                }
            }
            spec.hyperparams[id] = std::move(values);
            continue;
        }
        throw SpecError(source + ": unknown section [" + name + "] (valid: experiment, gao, hyper.<method>)");
    }
    return spec;
}

ExperimentSpec load_spec(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw SpecError("cannot read spec file " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_spec(text.str(), file.string());
}

void apply(ExperimentSpec& spec, const Overrides& o) {
    if (o.output) spec.output = *o.output;
    if (o.seed) spec.seed = *o.seed;
    if (o.runs) {
        if (*o.runs == 0) throw ConfigError("runs must be positive");
        spec.runs = *o.runs;
    }
    if (o.budget_multiplier) {
        if (*o.budget_multiplier <= 0) throw ConfigError("budget multiplier must be positive");
        spec.budget_multiplier = *o.budget_multiplier;
    }
}

std::string operator_dirname(const core::OperatorConfig& ops) {
    auto name = ops.name();
    std::replace(name.begin(), name.end(), '/', '-');
    return name;
}

std::vector<ConfigGroup> expand(const ExperimentSpec& spec) {
    if (spec.pcms.empty()) throw ConfigError("the spec lists no methods (pcms)");
    if (spec.operators.empty()) throw ConfigError("the spec lists no operators");
    if (spec.dimensions.empty()) throw ConfigError("the spec lists no dimensions");
    std::vector<ConfigGroup> groups;
    for (auto dim : spec.dimensions)
        for (auto fn : spec.functions) {
            auto problem = std::make_shared<const problems::Problem>(problems::make_problem(fn, dim, spec.seed));
            for (const auto& id : spec.pcms)
                for (const auto& ops : spec.operators) {
                    ConfigGroup g;
                    auto& c = g.config;
                    c.pcm_id = id;
                    c.ops = ops;
                    c.problem = problem;
                    c.population_size = spec.population;
                    c.budget_multiplier = spec.budget_multiplier;
                    c.restart = spec.restart;
                    if (auto it = spec.hyperparams.find(id); it != spec.hyperparams.end()) c.hyperparams = it->second;
                    c.ops.validate(c.resolved_population());
                    g.directory = id + "/" + operator_dirname(ops) + "/" + problem->id + "/D" + std::to_string(dim);
                    groups.push_back(std::move(g));
                }
        }
    return groups;
}

fs::path resolve_output(const ExperimentSpec& spec, const fs::path& spec_file) {
    if (!spec.output.empty()) return spec.output;
    const auto stem = spec_file.stem();
    if (const char* root = std::getenv("DEPCM_OUTPUT_ROOT"); root != nullptr && *root != '\0') return fs::path(root) / stem;
    return fs::path("results") / stem;
}

RunSummary execute(const std::vector<ConfigGroup>& groups, const ExperimentSpec& spec, const fs::path& root,
                   std::size_t jobs, bool oracle) {
    std::vector<harness::RunConfig> configs;
    for (const auto& g : groups) configs.push_back(g.config);
    const auto ocfg = spec.oracle;
    harness::Runner runner = harness::run;
    if (oracle) runner = [ocfg](const harness::RunConfig& c) { return gao::gaode_run(c, ocfg); };
    const auto results = harness::run_batch(configs, spec.runs, spec.seed, jobs, runner);

    RunSummary summary;
    summary.groups = groups.size();
    summary.runs = results.size();
    summary.output = root;

    // single writer: everything below runs on this thread, in config order
    json manifest;
    manifest["seed"] = spec.seed;
    manifest["runs_per_group"] = spec.runs;
    manifest["budget_multiplier"] = spec.budget_multiplier;
    manifest["driver"] = oracle ? "gaode" : "pcm";
    if (oracle)
        manifest["oracle"] = {{"candidates", ocfg.candidates},
                              {"repeats", ocfg.repeats},
                              {"score", ocfg.score == gao::OracleScore::trial ? "trial" : "survivor"}};
    json group_list = json::array();

    std::set<std::pair<std::size_t, std::string>> seen_problems;
    std::vector<problems::Problem> suite;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        std::string text;
        std::size_t failures = 0;
        for (std::size_t r = 0; r < spec.runs; ++r) {
            const auto& res = results[gi * spec.runs + r];
            auto record = harness::make_record(g.config, res);
            if (oracle) record.pcm = "gaode";
            const auto line = harness::to_json_line(record);
            if (const auto problem = harness::validate_record_line(line); !problem.empty())
                throw std::logic_error("schema check failed for " + g.directory + ": " + problem);
            text += line + "\n";
            if (!res.ok) ++failures;
        }
        summary.failures += failures;
        write_text(root / g.directory / "runs.jsonl", text);

        const auto& p = *g.config.problem;
        if (seen_problems.insert({p.dimension, p.id}).second) suite.push_back(p);
        group_list.push_back({{"directory", g.directory},
                              {"pcm", oracle ? std::string("gaode") : g.config.pcm_id},
                              {"operator", g.config.ops.name()},
                              {"problem", p.id},
                              {"D", p.dimension},
                              {"config_hash", g.config.hash()},
                              {"runs", spec.runs},
                              {"failures", failures}});
    }
    manifest["total_runs"] = summary.runs;
    manifest["failed_runs"] = summary.failures;
    manifest["groups"] = std::move(group_list);
    write_text(root / "manifest.json", manifest.dump(2) + "\n");
    write_text(root / "suite.jsonl", problems::suite_manifest(suite));
    return summary;
}

std::vector<harness::RunRecord> load_records(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().filename() == "runs.jsonl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<harness::RunRecord> records;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            try {
                records.push_back(harness::from_json_line(line));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
    if (records.empty()) throw ConfigError("no run records under " + dir.string());
    return records;
}

AnalyzeMode parse_mode(std::string_view mode) {
    if (mode == "ecdf") return AnalyzeMode::ecdf;
    if (mode == "aps") return AnalyzeMode::aps;
    throw ConfigError("unknown analysis mode '" + std::string(mode) + "' (valid: ecdf, aps)");
}

std::vector<fs::path> analyze(const std::vector<harness::RunRecord>& records, AnalyzeMode mode, const fs::path& out) {
    std::vector<fs::path> written;
    // (D, operator) -> method -> records
    std::map<std::pair<std::size_t, std::string>, std::map<std::string, std::vector<const harness::RunRecord*>>> cells;
    for (const auto& r : records)
        if (r.status == "ok") cells[{r.dimension, r.op}][r.pcm].push_back(&r);

    for (const auto& [key, methods] : cells) {
        const auto& [dim, op] = key;
        auto op_dir = op;
        std::replace(op_dir.begin(), op_dir.end(), '/', '-');

        if (mode == AnalyzeMode::ecdf) {
            const auto axis = harness::default_budget_axis();
            for (const auto& [method, recs] : methods) {
                std::vector<harness::RunTrajectory> runs;
                for (const auto* r : recs) runs.push_back(r->trajectory);
                const auto curve = harness::ecdf(runs, axis);
                std::string text = "budget_per_D,proportion\n";
                for (std::size_t k = 0; k < axis.size(); ++k)
                    text += json_number(axis[k]) + "," + json_number(curve[k]) + "\n";
                const auto file = out / "ecdf" / ("D" + std::to_string(dim)) / op_dir / (method + ".csv");
                check_csv(file, text, harness::ecdf_header, {true, true});
                write_text(file, text);
                written.push_back(file);
            }
            continue;
        }

        std::vector<std::string> algs;
        for (const auto& [method, recs] : methods) algs.push_back(method);
        std::sort(algs.begin(), algs.end(), method_before);
        std::vector<std::string> problem_ids;
        std::map<std::string, std::string> category;
        for (const auto& [method, recs] : methods)
            for (const auto* r : recs) {
                category[r->problem] = r->category;
                if (std::find(problem_ids.begin(), problem_ids.end(), r->problem) == problem_ids.end())
                    problem_ids.push_back(r->problem);
            }
        std::sort(problem_ids.begin(), problem_ids.end());

        harness::ErrorTable errors(algs.size(), std::vector<std::vector<double>>(problem_ids.size()));
        for (std::size_t a = 0; a < algs.size(); ++a) {
            std::vector<const harness::RunRecord*> recs = methods.at(algs[a]);
            std::sort(recs.begin(), recs.end(), [](auto* x, auto* y) { return x->run_index < y->run_index; });
            for (const auto* r : recs) {
                const auto p = static_cast<std::size_t>(
                    std::find(problem_ids.begin(), problem_ids.end(), r->problem) - problem_ids.begin());
                errors[a][p].push_back(r->trajectory.final_error);
            }
        }
        const auto runs = errors.front().front().size();
        for (std::size_t a = 0; a < algs.size(); ++a)
            for (std::size_t p = 0; p < problem_ids.size(); ++p)
                if (errors[a][p].size() != runs || runs < 2)
                    throw ConfigError("APS needs equal run counts (at least 2) for every method and problem; " + algs[a] +
                                      " on " + problem_ids[p] + " has " + std::to_string(errors[a][p].size()));

        const auto penalties = harness::aps_penalties(errors);
        std::vector<std::size_t> all(problem_ids.size());
        for (std::size_t p = 0; p < all.size(); ++p) all[p] = p;
        const auto overall = harness::aps_subset(penalties, all);

        std::string text = "algorithm,problem_group,aps\n";
        for (std::size_t a = 0; a < algs.size(); ++a) text += algs[a] + ",all," + json_number(overall[a]) + "\n";
        const auto stem = "D" + std::to_string(dim) + "_" + op_dir;
        const auto file = out / "aps" / ("aps_" + stem + ".csv");
        check_csv(file, text, harness::aps_header, {false, false, true});
        write_text(file, text);
        written.push_back(file);

        std::map<std::string, std::vector<std::size_t>> by_group;
        for (std::size_t p = 0; p < problem_ids.size(); ++p) by_group[category[problem_ids[p]]].push_back(p);
        std::string groups_text = "algorithm,problem_group,aps\n";
        for (std::size_t a = 0; a < algs.size(); ++a)
            for (const auto& [group, members] : by_group)
                groups_text += algs[a] + "," + group + "," + json_number(harness::aps_subset(penalties, members)[a]) + "\n";
        const auto groups_file = out / "aps" / ("aps_groups_" + stem + ".csv");
        check_csv(groups_file, groups_text, harness::aps_header, {false, false, true});
        write_text(groups_file, groups_text);
        written.push_back(groups_file);
    }
    if (written.empty()) throw ConfigError("no successful runs to analyze");
    return written;
}

void print_catalog(std::ostream& out) {
    out << std::left << std::setw(8) << "id" << std::setw(13) << "name" << std::setw(10) << "category" << std::setw(6)
        << "F" << std::setw(6) << "C" << std::setw(5) << "S/O" << std::setw(5) << "C/D" << std::setw(5) << "S/M"
        << std::setw(6) << "Info" << std::setw(5) << "Inh" << "defaults\n";
    for (const auto& info : pcm::catalog()) {
        std::string defaults;
        for (const auto& h : info.hyperparams) {
            std::ostringstream v;
            v << h.value;
            defaults += (defaults.empty() ? "" : " ") + h.name + "=" + v.str();
        }
        if (!info.implemented) defaults = "(reference only, not runnable)";
        auto cell = [](const std::string& s) { return s.empty() ? std::string("-") : s; };
        out << std::left << std::setw(8) << info.id << std::setw(13) << info.name << std::setw(10)
            << pcm::to_string(info.category) << std::setw(6) << info.f_class << std::setw(6) << info.c_class
            << std::setw(5) << cell(info.success_obs) << std::setw(5) << cell(info.cont_disc) << std::setw(5)
            << cell(info.single_multi) << std::setw(6) << cell(info.info) << std::setw(5)
            << (info.inheritance ? "yes" : "-") << defaults << "\n";
    }
}

namespace {

int run_command(const fs::path& spec_file, const Overrides& overrides, std::size_t jobs, bool oracle,
                std::ostream& out, std::ostream& err) {
    ExperimentSpec spec;
    std::vector<ConfigGroup> groups;
    try {
        spec = load_spec(spec_file);
        apply(spec, overrides);
        if (oracle) {
            if (spec.operators.empty()) spec.operators = {core::OperatorConfig::parse("rand/1/bin")};
            for (const auto& ops : spec.operators)
                if (ops.mutation != core::Mutation::rand_1 || ops.crossover != core::Crossover::bin)
                    throw ConfigError("gaode supports only rand/1/bin, got " + ops.name());
            spec.pcms = {"f05c09"};
        }
        if (spec.pcms.empty()) throw ConfigError(spec_file.string() + ": [experiment] needs a pcms key");
        if (spec.operators.empty()) throw ConfigError(spec_file.string() + ": [experiment] needs an operators key");
        groups = expand(spec);
        if (oracle)
            for (auto& g : groups) {
                g.config.tag = "gaode K=" + std::to_string(spec.oracle.candidates) +
                               " R=" + std::to_string(spec.oracle.repeats) +
                               (spec.oracle.score == gao::OracleScore::survivor ? " survivor" : "");
                g.directory = "gaode" + g.directory.substr(g.directory.find('/'));
            }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    const auto root = resolve_output(spec, spec_file);
    const auto summary = execute(groups, spec, root, jobs, oracle);
    out << summary.groups << " config groups, " << summary.runs << " runs, " << summary.failures << " failed -> "
        << root.string() << "\n";
    return summary.failures == 0 ? exit_ok : exit_run_failures;
}

} // namespace

int cmd_run(const fs::path& spec_file, const Overrides& overrides, std::size_t jobs, std::ostream& out,
            std::ostream& err) {
    return run_command(spec_file, overrides, jobs, false, out, err);
}

int cmd_gaode(const fs::path& spec_file, const Overrides& overrides, std::size_t jobs, std::ostream& out,
              std::ostream& err) {
    return run_command(spec_file, overrides, jobs, true, out, err);
}

int cmd_analyze(const fs::path& dir, std::string_view mode, const std::optional<fs::path>& out_dir, std::ostream& out,
                std::ostream& err) {
    try {
        const auto m = parse_mode(mode);
        const auto records = load_records(dir);
        const auto files = analyze(records, m, out_dir.value_or(dir / "analysis"));
        out << files.size() << " files written\n";
        for (const auto& f : files) out << "  " << f.string() << "\n";
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    }
}

int cmd_list(std::ostream& out) {
    print_catalog(out);
    return exit_ok;
}

} // namespace depcm::experiment
