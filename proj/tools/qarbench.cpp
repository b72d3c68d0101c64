// qarbench.cpp — Command-line driver for the refrigerator studies

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qar/config.hpp"
#include "qar/csv.hpp"
#include "qar/error.hpp"
#include "qar/experiments.hpp"

using namespace qar;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Options {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> grids;
    std::vector<std::string> sets;
    int samples{-1};
    std::vector<double> panels;
};

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* flag) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw Error(ErrorCode::Config, std::string(flag) + " expects key=value, got '" + text + "'");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

// axis=min:max:count[:scale]
void apply_grid_override(ExperimentConfig& cfg, const std::string& text) {
    const auto [axis, spec] = split_assignment(text, "--grid");
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = spec.find(':', start)) != std::string::npos; start = pos + 1)
        parts.push_back(spec.substr(start, pos - start));
    parts.push_back(spec.substr(start));
    if (parts.size() != 3 && parts.size() != 4)
        throw Error(ErrorCode::Config, "grid." + axis + ": expected min:max:count[:scale], got '" + spec + "'");
    const std::string prefix = "grid." + axis + ".";
    apply_config_entry(cfg, prefix + "min", parts[0]);
    apply_config_entry(cfg, prefix + "max", parts[1]);
    apply_config_entry(cfg, prefix + "count", parts[2]);
    if (parts.size() == 4) apply_config_entry(cfg, prefix + "scale", parts[3]);
}

ExperimentConfig resolve_config(Study study, const Options& o) {
    ExperimentConfig cfg = default_config(study);
    if (!o.config_path.empty()) cfg = load_config(o.config_path, cfg);
    for (const auto& s : o.sets) {
        const auto [key, value] = split_assignment(s, "--set");
        apply_config_entry(cfg, key, value);
    }
    for (const auto& g : o.grids) apply_grid_override(cfg, g);
    if (o.seed) cfg.seed = *o.seed;
    if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
    for (const auto& [axis, grid] : cfg.grids) grid.validate(axis);
    cfg.baths.validate();
    for (const auto& w : cfg.baths.warnings()) std::cerr << "warning: " << w << "\n";
    return cfg;
}

void write_csv(const ExperimentConfig& cfg, const char* name, const CsvTable& table) {
    std::filesystem::create_directories(cfg.output_dir);
    write_text_file(cfg.output_dir / name, table.str());
    std::cerr << "wrote " << (cfg.output_dir / name).string() << " (" << table.size() << " rows)\n";
}

template <class Rows>
int finish(const Rows& rows) {
    std::size_t failed = 0;
    for (const auto& r : rows)
        if (r.status != kStatusOk) ++failed;
    if (failed) std::cerr << "warning: " << failed << " of " << rows.size() << " points failed\n";
    return !rows.empty() && failed == rows.size() ? kExitSolver : 0;
}

int run(Study study, const Options& o) {
    const ExperimentConfig cfg = resolve_config(study, o);
    switch (study) {
    case Study::SweepCoupling: {
        const auto rows = sweep_coupling(cfg);
        write_csv(cfg, "sweep_coupling.csv", sweep_coupling_table(rows));
        return finish(rows);
    }
    case Study::CoolingWindow: {
        const auto result = cooling_window_scan(cfg);
        write_csv(cfg, "cooling_window.csv", cooling_window_table(result.grid));
        write_csv(cfg, "cooling_window_boundary.csv", cooling_window_table(result.boundary));
        return finish(result.grid);
    }
    case Study::PerformanceMap: {
        const auto result = performance_map(cfg);
        write_csv(cfg, "performance_map.csv", performance_map_table(result.rows));
        write_csv(cfg, "performance_ridge.csv", ridge_table(result.ridge));
        const std::string report = performance_report(result);
        write_text_file(cfg.output_dir / "performance_report.txt", report);
        std::cout << report;
        return finish(result.rows);
    }
    case Study::RandomOpt: {
        RandomOptOptions opt;
        if (o.samples >= 0) opt.samples = o.samples;
        if (!o.panels.empty()) opt.panels = o.panels;
        if (opt.samples < 1) throw Error(ErrorCode::Config, "--samples must be at least 1");
        const auto rows = random_temperature_optimization(cfg, opt);
        write_csv(cfg, "random_opt.csv", random_opt_table(rows));
        return finish(rows);
    }
    case Study::Entropy: {
        const auto rows = entropy_scan(cfg);
        write_csv(cfg, "entropy_scan.csv", entropy_scan_table(rows));
        return finish(rows);
    }
    case Study::Steady: {
        SystemParams p = cfg.system;
        p.coupling = cfg.hamiltonians.front();
        std::cout << performance_record_text(evaluate_performance(p, cfg.baths, cfg.models.front()));
        return 0;
    }
    case Study::Evolve: {
        write_csv(cfg, "trajectory.csv", trajectory_table(evolve_trajectory(cfg)));
        return 0;
    }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-qubit absorption refrigerator studies"};
    app.require_subcommand(1);
    Options o;

    const std::vector<std::pair<const char*, Study>> commands{
        {"sweep-g", Study::SweepCoupling}, {"window", Study::CoolingWindow}, {"map", Study::PerformanceMap},
        {"random-opt", Study::RandomOpt},  {"entropy", Study::Entropy},      {"steady", Study::Steady},
        {"evolve", Study::Evolve},
    };
    const std::map<std::string, const char*> descriptions{
        {"sweep-g", "cooling power against coupling for all model and Hamiltonian kinds"},
        {"window", "cooling region over (T_h, T_w) with refined boundary"},
        {"map", "cooling power over (g, kappa_eff) with ridge and maximum report"},
        {"random-opt", "optimal (g, chi) for randomly drawn bath temperatures"},
        {"entropy", "stationary entropy production against coupling"},
        {"steady", "performance record for a single parameter point"},
        {"evolve", "transient cooling power from the thermal product state"},
    };
    std::optional<Study> chosen;
    for (const auto& [name, study] : commands) {
        CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("--config", o.config_path, "key = value configuration file");
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_option("--seed", o.seed, "64-bit seed");
        sub->add_option("--grid", o.grids, "axis=min:max:count[:scale]");
        sub->add_option("--set", o.sets, "key=value override");
        if (study == Study::RandomOpt) {
            sub->add_option("--samples", o.samples, "samples per panel");
            sub->add_option("--panels", o.panels, "omega_w / omega_c panel values")->delimiter(',');
        }
        sub->callback([&chosen, s = study] { chosen = s; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        return run(*chosen, o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::Config || e.code() == ErrorCode::InvalidArgument ? kExitConfig : kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}
