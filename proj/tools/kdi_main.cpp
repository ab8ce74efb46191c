// Command-line front end: simulate | splitter | sweep | paths.
// Exit codes: 0 success, 2 configuration error, 3 solver error.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdi/errors.hpp"
#include "kdi/io.hpp"
#include "kdi/run.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "./out";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "path to the run config file")
        ->required();
    cmd->add_option("--out-dir", args.out_dir, "output directory (default ./out)");
}

std::string joined(const std::string& dir, const std::string& name) {
    const std::filesystem::path p(name);
    if (p.is_absolute()) return name;
    return (std::filesystem::path(dir) / p).string();
}

void print_warnings(const kdi::RunConfig& cfg) {
    for (const std::string& w : cfg.warnings()) {
        std::cerr << "warning: " << w << "\n";
    }
}

int run_simulate(const CommonArgs& args) {
    const kdi::RunConfig cfg = kdi::parse_config_file(args.config_path);
    print_warnings(cfg);

    const auto t0 = std::chrono::steady_clock::now();
    const kdi::RunResult result = kdi::simulate(cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    kdi::write_file(joined(args.out_dir, cfg.output.csv_path),
                    kdi::density_csv(result.density));
    kdi::write_file(joined(args.out_dir, cfg.output.json_path),
                    kdi::summary_json(cfg, result).dump(2) + "\n");

    std::cout << "omega_rec/2pi = " << result.setup.omega_rec / (2.0 * kdi::pi)
              << " Hz, g1g2/2pi = " << result.setup.g1g2 / (2.0 * kdi::pi)
              << " Hz, pulse = " << result.setup.pulse_duration << " s\n";
    std::cout << "delta_phi_prediction = " << result.delta_phi_prediction << " rad\n";
    for (const kdi::BeamReport& b : result.beams) {
        std::cout << "beam " << b.label << ": z = " << b.measured_position
                  << " m (predicted " << b.predicted_position
                  << "), population = " << b.population << "\n";
    }
    std::cout << "norm drift = " << result.norm_drift << ", wall time = " << wall
              << " s\n";
    return 0;
}

int run_splitter(const CommonArgs& args, const std::string& scan_name,
                 double from, double to, int points) {
    const kdi::RunConfig cfg = kdi::parse_config_file(args.config_path);
    print_warnings(cfg);

    kdi::SplitterScan scan;
    if (scan_name == "duration") {
        scan = kdi::SplitterScan::Duration;
    } else if (scan_name == "detuning") {
        scan = kdi::SplitterScan::Detuning;
    } else if (scan_name == "kbar") {
        scan = kdi::SplitterScan::Kbar;
    } else {
        throw kdi::ConfigError("unknown scan target '" + scan_name +
                               "' (expected duration|detuning|kbar)");
    }
    const auto table = kdi::splitter_scan(cfg, scan, from, to, points);
    kdi::write_file(joined(args.out_dir, cfg.output.csv_path),
                    kdi::splitter_csv(table, scan_name));
    std::cout << "wrote " << table.size() << " scan points\n";
    return 0;
}

int run_sweep(const CommonArgs& args, const std::string& param_name, double from,
              double to, int points) {
    const kdi::RunConfig cfg = kdi::parse_config_file(args.config_path);
    print_warnings(cfg);

    kdi::SweepParam param;
    if (param_name == "a") {
        param = kdi::SweepParam::Acceleration;
    } else if (param_name == "T_prime") {
        param = kdi::SweepParam::TPrime;
    } else {
        throw kdi::ConfigError("unknown sweep parameter '" + param_name +
                               "' (expected a|T_prime)");
    }
    if (points < 1) throw kdi::ConfigError("--points must be >= 1");
    const auto table = kdi::beam_fringe(cfg, param, from, to, points);
    kdi::write_file(joined(args.out_dir, cfg.output.csv_path),
                    kdi::fringe_csv(table));
    std::cout << "wrote " << table.size() << " sweep points\n";
    return 0;
}

int run_paths(const CommonArgs& args) {
    const kdi::RunConfig cfg = kdi::parse_config_file(args.config_path);
    print_warnings(cfg);

    const kdi::SimulationSetup setup = kdi::make_setup(cfg);
    const auto paths = kdi::enumerate_paths(setup.rb);
    const auto beams = kdi::merge_paths(
        paths, 1e-3 * kdi::PhysicalConstants::hbar * setup.rb.k_L,
        1e-2 * setup.init.width_w);
    kdi::write_file(joined(args.out_dir, cfg.output.json_path),
                    kdi::paths_json(cfg, paths, beams).dump(2) + "\n");
    std::cout << "wrote " << beams.size() << " beams (" << paths.size()
              << " paths)\n";
    return 0;
}

void print_error(const kdi::Error& e) {
    nlohmann::ordered_json j;
    j["error"] = {{"type", e.type()}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Electron interferometer simulator: bichromatic Kapitza-Dirac "
                 "beam splitters in a Ramsey-Borde sequence"};
    app.require_subcommand(1);

    CommonArgs sim_args;
    CLI::App* sim = app.add_subcommand("simulate", "run the full pulse sequence");
    add_common(sim, sim_args);

    CommonArgs split_args;
    std::string scan_name;
    double split_from = 0.0, split_to = 0.0;
    int split_points = 201;
    CLI::App* split = app.add_subcommand("splitter", "single-pulse transfer scans");
    add_common(split, split_args);
    split->add_option("--scan", scan_name, "duration|detuning|kbar")->required();
    split->add_option("--from", split_from, "scan start (SI units)");
    split->add_option("--to", split_to, "scan end (SI units)");
    split->add_option("--points", split_points, "number of scan points");

    CommonArgs sweep_args;
    std::string param_name;
    double sweep_from = 0.0, sweep_to = 0.0;
    int sweep_points = 0;
    CLI::App* sweep = app.add_subcommand("sweep", "interferometer fringe sweep");
    add_common(sweep, sweep_args);
    sweep->add_option("--param", param_name, "a|T_prime (SI: m/s^2 or s)")->required();
    sweep->add_option("--from", sweep_from, "sweep start (SI units)")->required();
    sweep->add_option("--to", sweep_to, "sweep end (SI units)")->required();
    sweep->add_option("--points", sweep_points, "number of sweep points")->required();

    CommonArgs paths_args;
    CLI::App* paths = app.add_subcommand("paths", "classical partial-beam trajectories");
    add_common(paths, paths_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return run_simulate(sim_args);
        if (split->parsed()) {
            return run_splitter(split_args, scan_name, split_from, split_to,
                                split_points);
        }
        if (sweep->parsed()) {
            return run_sweep(sweep_args, param_name, sweep_from, sweep_to,
                             sweep_points);
        }
        if (paths->parsed()) return run_paths(paths_args);
    } catch (const kdi::Error& e) {
        print_error(e);
        return e.kind() == kdi::Error::Kind::Validation ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << R"({"error":{"type":"Internal","message":")" << e.what()
                  << "\"}}\n";
        return 3;
    }
    return 0;
}
