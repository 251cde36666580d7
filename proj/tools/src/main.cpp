#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opamech/config.hpp"
#include "opamech/linear_dynamics.hpp"
#include "opamech/spectra.hpp"

#include "csv.hpp"
#include "manifest.hpp"
#include "presets.hpp"
#include "runner.hpp"
#include "svg.hpp"

namespace {

namespace fs = std::filesystem;
using namespace opamech;
using namespace opamech::tools;

struct NoiseChoice {
    std::string token = "auto";

    const NoiseModel* resolve(const SystemParams& p, NoiseModel& storage) const {
        if (token == "auto") return nullptr;
        if (token == "exact") { storage = NoiseModel::exact(p.temperature); return &storage; }
        if (token == "hight") {
            storage = NoiseModel::high_temperature(p.temperature);
            return &storage;
        }
        throw std::invalid_argument("--noise must be exact, hight, or auto");
    }
};

std::vector<SpectrumKind> parse_spectra_list(const std::string& list) {
    std::vector<SpectrumKind> kinds;
    for (Output o : outputs_from_string(list)) {
        switch (o) {
            case Output::SQ: kinds.push_back(SpectrumKind::SQ); break;
            case Output::Scout: kinds.push_back(SpectrumKind::Scout); break;
            case Output::Sxout: kinds.push_back(SpectrumKind::Sxout); break;
            case Output::Syout: kinds.push_back(SpectrumKind::Syout); break;
            default:
                throw std::invalid_argument("--outputs for point accepts spectra kinds or none");
        }
    }
    return kinds;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Steady states, stability, normal modes, and noise spectra of a "
                 "Fabry-Perot cavity with an intracavity degenerate OPA"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", noise_token = "auto";
    int grid_points = 4001, workers = 1, branch = 0;
    double grid_lo = 0.5, grid_hi = 1.5;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", config_path, "JSON config file")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--grid-points", grid_points, "frequency grid size");
        cmd->add_option("--grid-lo", grid_lo, "grid start, units of omega_m");
        cmd->add_option("--grid-hi", grid_hi, "grid end, units of omega_m");
        cmd->add_option("--noise", noise_token, "thermal noise model: exact|hight|auto");
        cmd->add_option("--branch", branch, "branch index in bare-detuning mode");
    };

    // point
    auto* point = app.add_subcommand("point", "single-point analysis: steady state, "
                                              "stability, modes, spectra");
    std::string point_outputs = "SQ";
    add_common(point, true);
    point->add_option("--outputs", point_outputs, "spectra to evaluate: SQ,Scout,Sxout,Syout or none");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    std::string axis_name = "parametric_gain";
    std::string sweep_outputs = "roots,stability,photon_number,splitting_estimate";
    std::string values_list;
    double sweep_from = 0.0, sweep_to = 1.0;
    int sweep_steps = 0;
    add_common(sweep, true);
    sweep->add_option("--axis", axis_name,
                      "parametric_gain (G/kappa) | laser_power (mW) | "
                      "effective_detuning | bare_detuning (omega_m units)");
    sweep->add_option("--from", sweep_from, "first axis value");
    sweep->add_option("--to", sweep_to, "last axis value");
    sweep->add_option("--steps", sweep_steps, "number of axis values");
    sweep->add_option("--values", values_list, "explicit comma-separated axis values");
    sweep->add_option("--outputs", sweep_outputs, "column groups");
    sweep->add_option("--workers", workers, "worker threads");

    // boundary
    auto* boundary = app.add_subcommand("boundary", "bisect the Routh-Hurwitz stability "
                                                    "boundary along an axis");
    double b_lo = 0.0, b_hi = 1.0;
    add_common(boundary, true);
    boundary->add_option("--axis", axis_name, "axis (units as in sweep)")->required();
    boundary->add_option("--lo", b_lo, "bracket start")->required();
    boundary->add_option("--hi", b_hi, "bracket end")->required();

    // plot
    auto* plot = app.add_subcommand("plot", "render SVG line charts from a CSV produced "
                                            "by this tool");
    std::string csv_path, x_col, y_cols;
    plot->add_option("csv", csv_path, "input CSV")->required();
    plot->add_option("--x", x_col, "x column name")->required();
    plot->add_option("--y", y_cols, "comma-separated y column names")->required();
    plot->add_option("--out", out_dir, "output directory");

    // preset
    auto* preset = app.add_subcommand("preset", "reproduce a published figure");
    std::string preset_name;
    preset->add_option("name", preset_name, "fig2|fig3|fig4|fig5|fig6|fig7|fig8|fig9")
        ->required();
    preset->add_option("--out", out_dir, "output directory");
    preset->add_option("--grid-points", grid_points, "frequency grid size");
    preset->add_option("--workers", workers, "worker threads");
    preset->add_option("--noise", noise_token, "thermal noise model: exact|hight|auto");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    NoiseChoice noise{noise_token};
    fs::create_directories(out_dir);

    if (point->parsed()) {
        const SystemParams p = load_config_file(config_path);
        PointOptions opt;
        opt.spectra = parse_spectra_list(point_outputs);
        opt.grid = {grid_lo, grid_hi, grid_points};
        opt.branch_index = branch;
        NoiseModel storage;
        opt.noise_override = noise.resolve(p, storage);
        RunManifest manifest;
        manifest.command = "point";
        const DerivedConstants d = derive_constants(p);
        manifest.runs.emplace_back("point", params_to_json(p, d));
        const PointOutcome outcome = run_point(p, opt, out_dir, manifest);
        manifest.write((fs::path(out_dir) / "manifest.json").string());
        if (outcome.exit_code == 2)
            std::cerr << "operating point is unstable; spectra were skipped\n";
        return outcome.exit_code;
    }

    if (sweep->parsed()) {
        const SystemParams p = load_config_file(config_path);
        SweepSpec spec;
        spec.axis = axis_from_string(axis_name);
        if (!values_list.empty()) {
            std::size_t start = 0;
            while (start <= values_list.size()) {
                std::size_t pos = values_list.find(',', start);
                if (pos == std::string::npos) pos = values_list.size();
                spec.values.push_back(std::stod(values_list.substr(start, pos - start)));
                start = pos + 1;
            }
        } else {
            if (sweep_steps < 1)
                throw std::invalid_argument("sweep needs --values or --steps >= 1");
            for (int i = 0; i < sweep_steps; ++i)
                spec.values.push_back(sweep_steps == 1
                                          ? sweep_from
                                          : sweep_from + (sweep_to - sweep_from) * i /
                                                (sweep_steps - 1));
        }
        spec.outputs = outputs_from_string(sweep_outputs);
        spec.grid = {grid_lo, grid_hi, grid_points};
        spec.branch_index = branch;
        spec.workers = workers;
        NoiseModel storage;
        const NoiseModel* noise_override = noise.resolve(p, storage);
        const CsvWriter csv = run_sweep(p, spec, noise_override);
        const std::string csv_path = (fs::path(out_dir) / "sweep.csv").string();
        csv.write(csv_path);
        RunManifest manifest;
        manifest.command = "sweep";
        const DerivedConstants d = derive_constants(p);
        manifest.runs.emplace_back("base", params_to_json(p, d));
        manifest.add_output(csv_path);
        manifest.write((fs::path(out_dir) / "manifest.json").string());
        std::cout << csv_path << "\n";
        return 0;
    }

    if (boundary->parsed()) {
        const SystemParams p = load_config_file(config_path);
        const SweepAxis axis = axis_from_string(axis_name);
        const BoundaryResult r = find_stability_boundary(p, axis, b_lo, b_hi, branch);
        std::printf("critical %s = %.9g (first failing condition: %d)\n",
                    axis_column_name(axis), r.critical_value, r.failing_condition);
        nlohmann::json j = {
            {"axis", axis_column_name(axis)},
            {"critical_value", r.critical_value},
            {"failing_condition", r.failing_condition},
            {"stable_end", r.stable_end},
            {"unstable_end", r.unstable_end},
        };
        std::ofstream f((fs::path(out_dir) / "boundary.json").string());
        f << j.dump(2) << '\n';
        return 0;
    }

    if (plot->parsed()) {
        const CsvTable table = read_csv(csv_path);
        if (table.row_count() == 0) throw std::invalid_argument("CSV has no data rows");
        const auto xi = table.column_index(x_col);
        if (!xi) throw std::invalid_argument("unknown column: " + x_col);
        std::vector<std::string> files;
        std::size_t start = 0;
        while (start <= y_cols.size()) {
            std::size_t pos = y_cols.find(',', start);
            if (pos == std::string::npos) pos = y_cols.size();
            const std::string y_col = y_cols.substr(start, pos - start);
            start = pos + 1;
            if (y_col.empty()) continue;
            const auto yi = table.column_index(y_col);
            if (!yi) throw std::invalid_argument("unknown column: " + y_col);
            Series s{y_col, table.columns[*xi], table.columns[*yi]};
            const std::string svg_path =
                (fs::path(out_dir) /
                 (fs::path(csv_path).stem().string() + "_" + y_col + ".svg")).string();
            const Series one[] = {s};
            write_line_chart(svg_path, fs::path(csv_path).stem().string(), x_col, y_col, one);
            std::cout << svg_path << "\n";
        }
        return 0;
    }

    if (preset->parsed()) {
        PresetOptions opt;
        opt.grid_points = grid_points;
        opt.workers = workers;
        NoiseModel storage;
        const SystemParams base = reference_params(0.0, 6.9);
        opt.noise_override = noise.resolve(base, storage);
        const auto files = run_preset(preset_name, out_dir, opt);
        for (const auto& f : files) std::cout << f << "\n";
        return 0;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return 2;
    }
}
