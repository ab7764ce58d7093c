// Command-line front end: simulate / sweep / optimize / validate.
// Exit codes: 0 success, 1 invalid configuration, 2 computation error
// (e.g. empty detection branch at fixed times), 3 validation failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tpjc/format.hpp"
#include "tpjc/metrics.hpp"
#include "tpjc/optimizer.hpp"
#include "tpjc/protocol.hpp"
#include "tpjc/validate.hpp"

namespace {

using nlohmann::ordered_json;

constexpr double kCavityDecayTimeSeconds = 0.1;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::optional<int> points;  // absent: bounds-only form lo:hi (optimize)
};

struct RunConfig {
    std::string preset = "epr";
    tpjc::FrequencyConvention convention = tpjc::FrequencyConvention::angular;
    double g1 = 17.5;
    double g2 = 17.5;
    std::optional<double> delta;         // absolute, same unit as g1/g2
    std::optional<double> delta_over_g;  // relative to g1; exclusive with delta
    std::map<std::string, double> fixed_times;
    std::map<std::string, GridSpec> grids;
    tpjc::Objective objective = tpjc::Objective::fidelity;
    std::optional<double> min_probability;
    std::string out;
    std::string format;  // empty: command default

    double resolved_delta() const {
        if (delta) return *delta;
        return delta_over_g.value_or(30.0) * g1;
    }
    tpjc::PhysicalParams params() const {
        tpjc::PhysicalParams p;
        p.g1 = g1;
        p.g2 = g2;
        p.delta = resolved_delta();
        p.convention = convention;
        return p;
    }
    std::vector<std::string> time_names() const {
        if (preset == "epr") return {"t1", "t2"};
        if (preset == "w") return {"t1", "t2", "t3"};
        throw ConfigError("unknown preset '" + preset + "' (expected epr or w)");
    }
    tpjc::ProtocolSpec protocol() const {
        const std::size_t passes = time_names().size();
        return passes == 2 ? tpjc::epr_protocol(params(), 0.0, 0.0)
                           : tpjc::w_protocol(params(), 0.0, 0.0, 0.0);
    }
    tpjc::TargetState target() const {
        return preset == "epr" ? tpjc::target_epr() : tpjc::target_w_two_photon();
    }
};

double require_number(const ordered_json& value, const std::string& key) {
    if (!value.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return value.get<double>();
}

tpjc::FrequencyConvention parse_convention(const std::string& text) {
    if (text == "angular") return tpjc::FrequencyConvention::angular;
    if (text == "cyclic") return tpjc::FrequencyConvention::cyclic;
    throw ConfigError("convention must be 'angular' or 'cyclic'");
}

tpjc::Objective parse_objective(const std::string& text) {
    if (text == "fidelity") return tpjc::Objective::fidelity;
    if (text == "fidelity_no_detection") return tpjc::Objective::fidelity_no_detection;
    throw ConfigError("objective must be 'fidelity' or 'fidelity_no_detection'");
}

bool is_time_name(const std::string& name) {
    return name == "t1" || name == "t2" || name == "t3";
}

GridSpec parse_grid_object(const ordered_json& object, const std::string& where) {
    GridSpec grid;
    bool have_start = false, have_stop = false;
    for (const auto& [key, value] : object.items()) {
        if (key == "start") {
            grid.start = require_number(value, where + ".start");
            have_start = true;
        } else if (key == "stop") {
            grid.stop = require_number(value, where + ".stop");
            have_stop = true;
        } else if (key == "points") {
            if (!value.is_number_integer()) throw ConfigError(where + ".points must be an integer");
            grid.points = value.get<int>();
        } else {
            throw ConfigError("unknown config key '" + where + "." + key + "'");
        }
    }
    if (!have_start || !have_stop) throw ConfigError(where + " needs start and stop");
    return grid;
}

void load_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& error) {
        throw ConfigError(std::string("config file is not valid JSON: ") + error.what());
    }
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");

    for (const auto& [key, value] : doc.items()) {
        if (key == "preset") config.preset = value.get<std::string>();
        else if (key == "convention") config.convention = parse_convention(value.get<std::string>());
        else if (key == "g1") config.g1 = require_number(value, key);
        else if (key == "g2") config.g2 = require_number(value, key);
        else if (key == "delta") config.delta = require_number(value, key);
        else if (key == "delta_over_g") config.delta_over_g = require_number(value, key);
        else if (is_time_name(key)) config.fixed_times[key] = require_number(value, key);
        else if (key == "grid") {
            if (!value.is_object()) throw ConfigError("'grid' must be an object");
            for (const auto& [var, spec] : value.items()) {
                if (!is_time_name(var)) throw ConfigError("unknown grid variable '" + var + "'");
                config.grids[var] = parse_grid_object(spec, "grid." + var);
            }
        } else if (key == "objective") config.objective = parse_objective(value.get<std::string>());
        else if (key == "min_probability") config.min_probability = require_number(value, key);
        else if (key == "out") config.out = value.get<std::string>();
        else if (key == "format") config.format = value.get<std::string>();
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

GridSpec parse_grid_flag(const std::string& text, std::string& var) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos)
        throw ConfigError("grid flag must look like t2=start:stop:points");
    var = text.substr(0, eq);
    if (!is_time_name(var)) throw ConfigError("unknown grid variable '" + var + "'");
    std::vector<std::string> parts;
    std::stringstream stream(text.substr(eq + 1));
    std::string part;
    while (std::getline(stream, part, ':')) parts.push_back(part);
    if (parts.size() != 2 && parts.size() != 3)
        throw ConfigError("grid flag must look like t2=start:stop[:points]");
    GridSpec grid;
    try {
        grid.start = std::stod(parts[0]);
        grid.stop = std::stod(parts[1]);
        if (parts.size() == 3) grid.points = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse grid flag '" + text + "'");
    }
    return grid;
}

ordered_json effective_config_json(const RunConfig& config) {
    ordered_json doc;
    doc["preset"] = config.preset;
    doc["convention"] =
        config.convention == tpjc::FrequencyConvention::angular ? "angular" : "cyclic";
    doc["g1"] = config.g1;
    doc["g2"] = config.g2;
    doc["delta"] = config.resolved_delta();
    doc["objective"] = config.objective == tpjc::Objective::fidelity ? "fidelity"
                                                                     : "fidelity_no_detection";
    for (const std::string& name : config.time_names()) {
        auto fixed = config.fixed_times.find(name);
        if (fixed != config.fixed_times.end()) {
            doc[name] = fixed->second;
            continue;
        }
        auto grid = config.grids.find(name);
        if (grid != config.grids.end()) {
            ordered_json spec;
            spec["start"] = grid->second.start;
            spec["stop"] = grid->second.stop;
            if (grid->second.points) spec["points"] = *grid->second.points;
            doc["grid"][name] = spec;
        }
    }
    if (config.min_probability) doc["min_probability"] = *config.min_probability;
    return doc;  // out/format are omitted: they do not affect the numbers
}

void write_output(const RunConfig& config, const std::string& text) {
    if (config.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.out, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file '" + config.out + "'");
    out << text;
}

std::vector<double> require_fixed_times(const RunConfig& config) {
    std::vector<double> times;
    for (const std::string& name : config.time_names()) {
        auto it = config.fixed_times.find(name);
        if (it == config.fixed_times.end())
            throw ConfigError("simulate needs a fixed value for " + name);
        if (!(it->second >= 0.0)) throw ConfigError(name + " must be nonnegative");
        times.push_back(it->second);
    }
    return times;
}

int cmd_simulate(const RunConfig& config) {
    const std::string format = config.format.empty() ? "text" : config.format;
    if (format != "text" && format != "json")
        throw ConfigError("simulate supports --format text|json");
    const std::vector<double> times = require_fixed_times(config);

    const tpjc::SweepRecord record =
        tpjc::evaluate_times(config.protocol(), times, config.objective, config.target());
    const bool branch_empty =
        config.objective == tpjc::Objective::fidelity && !record.fidelity_defined;

    double total_us = 0.0;
    for (double t : times) total_us += t;
    const double total_s = total_us * 1e-6;
    const double ratio = total_s / kCavityDecayTimeSeconds;

    std::string text;
    if (format == "json") {
        ordered_json doc;
        doc["command"] = "simulate";
        doc["config"] = effective_config_json(config);
        doc["results"]["fidelity"] =
            record.fidelity_defined ? ordered_json(record.fidelity) : ordered_json(nullptr);
        doc["results"]["probability"] = record.probability;
        doc["results"]["branch_empty"] = branch_empty;
        doc["results"]["times_us"] = times;
        doc["results"]["total_interaction_time_us"] = total_us;
        doc["results"]["total_interaction_time_s"] = total_s;
        doc["results"]["cavity_decay_time_s"] = kCavityDecayTimeSeconds;
        doc["results"]["interaction_to_decay_ratio"] = ratio;
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "protocol: " << config.preset << "\n";
        out << "convention: "
            << (config.convention == tpjc::FrequencyConvention::angular ? "angular" : "cyclic")
            << "\n";
        out << "g1 = " << tpjc::format_number(config.g1)
            << " /us, g2 = " << tpjc::format_number(config.g2)
            << " /us, delta = " << tpjc::format_number(config.resolved_delta()) << " /us\n";
        out << "objective: "
            << (config.objective == tpjc::Objective::fidelity ? "fidelity after detecting |g>"
                                                              : "fidelity without detection")
            << "\n";
        const std::vector<std::string> names = config.time_names();
        for (std::size_t i = 0; i < times.size(); ++i)
            out << names[i] << " = " << tpjc::format_number(times[i]) << " us\n";
        if (branch_empty) {
            out << "detection branch is empty: |g> carries no weight at these times\n";
        } else {
            out << "fidelity    = " << tpjc::format_number(record.fidelity) << "\n";
            out << "probability = " << tpjc::format_number(record.probability) << "\n";
        }
        out << "total interaction time = " << tpjc::format_number(total_us) << " us ("
            << tpjc::format_number(total_s) << " s)\n";
        out << "cavity decay time = " << tpjc::format_number(kCavityDecayTimeSeconds) << " s\n";
        out << "interaction time / decay time = " << tpjc::format_number(ratio) << "\n";
        text = out.str();
    }
    write_output(config, text);
    if (branch_empty) {
        std::cerr << "error: empty detection branch at the requested times\n";
        return 2;
    }
    return 0;
}

int cmd_sweep(const RunConfig& config) {
    const std::string format = config.format.empty() ? "csv" : config.format;
    if (format != "csv" && format != "json") throw ConfigError("sweep supports --format csv|json");

    std::vector<tpjc::TimeGrid> grids;
    const std::vector<std::string> names = config.time_names();
    for (const std::string& name : names) {
        auto fixed = config.fixed_times.find(name);
        if (fixed != config.fixed_times.end()) {
            grids.push_back({fixed->second, fixed->second, 1});
            continue;
        }
        auto spec = config.grids.find(name);
        if (spec == config.grids.end())
            throw ConfigError("sweep needs a fixed value or grid for " + name);
        grids.push_back({spec->second.start, spec->second.stop, spec->second.points.value_or(1)});
    }

    tpjc::ProtocolSpec protocol = config.protocol();
    const tpjc::SweepResult result = tpjc::sweep(protocol, grids, config.objective, config.target());

    const std::string config_line = effective_config_json(config).dump();
    std::string text;
    if (format == "csv") {
        std::ostringstream out;
        tpjc::write_sweep_csv(out, result, names, config_line);
        text = out.str();
    } else {
        ordered_json doc;
        doc["command"] = "sweep";
        doc["config"] = effective_config_json(config);
        ordered_json records = ordered_json::array();
        for (const tpjc::SweepRecord& record : result.records) {
            ordered_json row;
            row["times_us"] = record.times;
            row["fidelity"] =
                record.fidelity_defined ? ordered_json(record.fidelity) : ordered_json(nullptr);
            row["probability"] = record.probability;
            records.push_back(row);
        }
        doc["records"] = std::move(records);
        text = doc.dump(2) + "\n";
    }
    write_output(config, text);
    return 0;
}

int cmd_optimize(const RunConfig& config) {
    const std::string format = config.format.empty() ? "text" : config.format;
    if (format != "text" && format != "json")
        throw ConfigError("optimize supports --format text|json");

    std::vector<tpjc::TimeBounds> bounds;
    tpjc::OptimizeOptions options;
    options.min_probability = config.min_probability;
    const std::vector<std::string> names = config.time_names();
    for (const std::string& name : names) {
        auto fixed = config.fixed_times.find(name);
        if (fixed != config.fixed_times.end()) {
            bounds.push_back({fixed->second, fixed->second});
            continue;
        }
        auto spec = config.grids.find(name);
        if (spec == config.grids.end())
            throw ConfigError("optimize needs a fixed value or bounds (--grid " + name +
                              "=lo:hi[:points]) for " + name);
        bounds.push_back({spec->second.start, spec->second.stop});
        if (spec->second.points) options.coarse_points = std::max(options.coarse_points, *spec->second.points);
    }

    tpjc::OptimizeResult result;
    try {
        result = tpjc::optimize_times(config.protocol(), bounds, config.target(),
                                      config.objective, options);
    } catch (const std::runtime_error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }

    ordered_json doc;
    doc["command"] = "optimize";
    doc["config"] = effective_config_json(config);
    doc["best"]["times_us"] = result.best.times;
    doc["best"]["fidelity"] = result.best.fidelity;
    doc["best"]["probability"] = result.best.probability;
    doc["objective"] = config.objective == tpjc::Objective::fidelity ? "fidelity"
                                                                     : "fidelity_no_detection";
    doc["convention"] =
        config.convention == tpjc::FrequencyConvention::angular ? "angular" : "cyclic";
    doc["refinement_rounds"] = result.rounds;
    doc["evaluations"] = result.evaluations;

    std::string text;
    if (format == "json") {
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "best times (us):";
        for (std::size_t i = 0; i < result.best.times.size(); ++i)
            out << " " << names[i] << "=" << tpjc::format_number(result.best.times[i]);
        out << "\nfidelity    = " << tpjc::format_number(result.best.fidelity) << "\n";
        out << "probability = " << tpjc::format_number(result.best.probability) << "\n";
        out << "evaluations = " << result.evaluations
            << ", refinement rounds = " << result.rounds << "\n";
        out << "record: " << doc.dump() << "\n";
        text = out.str();
    }
    write_output(config, text);
    return 0;
}

int cmd_validate(std::uint64_t seed, int trials, double perturbation) {
    tpjc::ValidationOptions options;
    if (seed != 0) options.seed = seed;
    if (trials > 0) {
        options.unitarity_trials = trials;
        options.identity_trials = std::max(50, trials / 10);
        options.protocol_trials = std::max(50, trials / 20);
    }
    options.perturbation = perturbation;

    const std::vector<tpjc::ValidationCheck> checks = tpjc::run_validation(options);
    for (const tpjc::ValidationCheck& check : checks) {
        std::cout << (check.passed ? "PASS" : "FAIL") << "  " << check.name << ": cases=" << check.cases
                  << " max_residual=" << tpjc::format_number(check.max_residual)
                  << " tolerance=" << tpjc::format_number(check.tolerance) << "\n";
    }
    if (!tpjc::all_passed(checks)) {
        std::cout << "validation FAILED\n";
        return 3;
    }
    std::cout << "all validation checks passed\n";
    return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& config, std::string& config_path,
                        std::vector<std::string>& grid_flags, bool& no_detection,
                        std::string& convention, std::map<std::string, double>& times,
                        double& min_probability, bool& have_min_probability) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--preset", config.preset, "protocol preset: epr|w");
    cmd->add_option("--t1", times["t1"], "fixed t1 in microseconds");
    cmd->add_option("--t2", times["t2"], "fixed t2 in microseconds");
    cmd->add_option("--t3", times["t3"], "fixed t3 in microseconds");
    cmd->add_option("--grid", grid_flags, "time grid/bounds, var=start:stop[:points]")
        ->take_all();
    cmd->add_flag("--no-detection", no_detection, "optimize/report fidelity without detection");
    cmd->add_option("--convention", convention, "frequency convention: angular|cyclic");
    cmd->add_option("--min-probability", min_probability, "success probability floor")
        ->each([&](const std::string&) { have_min_probability = true; });
    cmd->add_option("--out", config.out, "output file (default stdout)");
    cmd->add_option("--format", config.format, "output format");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-photon Jaynes-Cummings cavity-chain simulator"};
    app.require_subcommand(1);

    RunConfig config;
    std::string config_path;
    std::vector<std::string> grid_flags;
    bool no_detection = false;
    std::string convention_flag;
    std::map<std::string, double> time_flags;
    double min_probability = 0.0;
    bool have_min_probability = false;

    CLI::App* simulate = app.add_subcommand("simulate", "run one protocol at fixed times");
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a grid of interaction times");
    CLI::App* optimize = app.add_subcommand("optimize", "search interaction times for maximal fidelity");
    for (CLI::App* cmd : {simulate, sweep, optimize})
        add_common_options(cmd, config, config_path, grid_flags, no_detection, convention_flag,
                           time_flags, min_probability, have_min_probability);

    CLI::App* validate = app.add_subcommand("validate", "run the internal consistency checks");
    std::uint64_t seed = 0;
    int trials = 0;
    double perturbation = 0.0;
    validate->add_option("--seed", seed, "random seed for the checks");
    validate->add_option("--trials", trials, "draws for the sampled checks");
    validate->add_option("--perturb-unitary", perturbation, "test hook: offset one propagator entry")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return 1;
    }

    try {
        if (validate->parsed()) return cmd_validate(seed, trials, perturbation);

        if (!config_path.empty()) load_config_file(config, config_path);
        for (CLI::App* cmd : {simulate, sweep, optimize}) {
            if (!cmd->parsed()) continue;
            for (const std::string& name : {std::string("t1"), std::string("t2"), std::string("t3")})
                if (cmd->count("--" + name) > 0) config.fixed_times[name] = time_flags[name];
            for (const std::string& flag : grid_flags) {
                std::string var;
                const GridSpec grid = parse_grid_flag(flag, var);
                config.grids[var] = grid;
                config.fixed_times.erase(var);
            }
            if (no_detection) config.objective = tpjc::Objective::fidelity_no_detection;
            if (!convention_flag.empty()) config.convention = parse_convention(convention_flag);
            if (have_min_probability) config.min_probability = min_probability;
        }
        if (config.delta && config.delta_over_g)
            throw ConfigError("give either delta or delta_over_g, not both");
        if (!(config.g1 >= 0.0) || !(config.g2 >= 0.0))
            throw ConfigError("coupling rates must be nonnegative");
        if (config.min_probability &&
            (*config.min_probability < 0.0 || *config.min_probability > 1.0))
            throw ConfigError("min_probability must be in [0, 1]");
        config.time_names();  // rejects unknown presets

        if (simulate->parsed()) return cmd_simulate(config);
        if (sweep->parsed()) return cmd_sweep(config);
        if (optimize->parsed()) return cmd_optimize(config);
        throw ConfigError("no command given");
    } catch (const ConfigError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    } catch (const std::domain_error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }
}
