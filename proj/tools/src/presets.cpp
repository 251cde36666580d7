#include "presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "opamech/linear_dynamics.hpp"
#include "svg.hpp"

namespace opamech::tools {

namespace {

namespace fs = std::filesystem;

std::string label_g(double g_over_kappa) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "G%.2fkappa", g_over_kappa);
    return buf;
}

std::string label_p(double power_mw) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "P%.1fmW", power_mw);
    return buf;
}

struct Curve {
    std::string label;
    SystemParams params;
};

// One spectrum figure: several parameter curves of the same kind on a shared grid.
std::vector<std::string> spectrum_figure(const std::string& name, SpectrumKind kind,
                                         const std::vector<Curve>& curves,
                                         const std::string& out_dir, const PresetOptions& opt,
                                         RunManifest& manifest) {
    std::vector<std::string> files;
    const double wm = curves.front().params.omega_m;
    const auto grid = frequency_grid(wm, kPresetGridLo, kPresetGridHi, opt.grid_points);
    const bool scaled = kind == SpectrumKind::SQ;

    CsvWriter csv;
    csv.header = {"omega_rad_s", "omega_over_omega_m"};
    CsvWriter peaks_csv;
    peaks_csv.header = {"curve", "kind", "position_over_omega_m", "height", "fwhm_over_omega_m"};

    std::vector<Series> series;
    std::vector<std::vector<double>> columns;
    for (const auto& curve : curves) {
        const DerivedConstants d = derive_constants(curve.params);
        const SteadyState ss = operating_point(curve.params, d);
        const NoiseModel noise =
            opt.noise_override ? *opt.noise_override : NoiseModel::automatic(curve.params);
        SpectrumResult res;
        if (kind == SpectrumKind::SQ) {
            res = sq_spectrum(ss, d, curve.params, grid, noise);
        } else {
            const SpectrumKind one[] = {kind};
            res = std::move(output_spectra(ss, d, curve.params, grid, noise, one)[0]);
        }
        const std::string stem = to_string(kind);
        csv.header.push_back(std::string(stem) + "_raw_" + curve.label);
        columns.push_back(res.values);
        if (scaled) {
            csv.header.push_back(std::string(stem) + "_scaled_" + curve.label);
            std::vector<double> col(res.values.size());
            for (std::size_t i = 0; i < col.size(); ++i) col[i] = res.values[i] * d.gamma_m;
            columns.push_back(std::move(col));
        }
        for (const auto& pk : res.peaks)
            peaks_csv.rows.push_back({curve.label, stem, format_number(pk.position / wm),
                                      format_number(pk.height), format_number(pk.fwhm / wm)});

        Series s;
        s.label = curve.label;
        s.x.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) s.x[i] = grid[i] / wm;
        s.y = scaled ? columns.back() : res.values;
        series.push_back(std::move(s));
        manifest.runs.emplace_back(curve.label, params_to_json(curve.params, d));
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row = {format_number(grid[i]), format_number(grid[i] / wm)};
        for (const auto& col : columns) row.push_back(format_number(col[i]));
        csv.rows.push_back(std::move(row));
    }

    const std::string csv_path = (fs::path(out_dir) / (name + "_spectra.csv")).string();
    csv.write(csv_path);
    files.push_back(csv_path);
    const std::string peaks_path = (fs::path(out_dir) / (name + "_peaks.csv")).string();
    peaks_csv.write(peaks_path);
    files.push_back(peaks_path);

    const std::string y_label =
        scaled ? std::string(to_string(kind)) + " x gamma_m" : std::string(to_string(kind));
    const std::string svg_path = (fs::path(out_dir) / (name + ".svg")).string();
    write_line_chart(svg_path, name, "omega/omega_m", y_label, series);
    files.push_back(svg_path);
    return files;
}

// fig2/fig3 sweeps: roots vs parametric gain for the two captioned powers.
std::vector<std::string> roots_figure(const std::string& name, bool imaginary_parts,
                                      const std::string& out_dir, const PresetOptions& opt,
                                      RunManifest& manifest) {
    std::vector<std::string> files;
    SweepSpec spec;
    spec.axis = SweepAxis::ParametricGain;
    for (int i = 0; i <= 80; ++i) spec.values.push_back(0.02 * i);  // G/kappa in [0, 1.6]
    spec.outputs = {Output::Roots, Output::Stability, Output::PhotonNumber};
    spec.workers = opt.workers;

    std::vector<Series> series;
    for (double power_mw : {6.9, 10.7}) {
        const SystemParams base = reference_params(0.0, power_mw);
        const DerivedConstants d = derive_constants(base);
        const CsvWriter csv = run_sweep(base, spec);
        const std::string csv_path =
            (fs::path(out_dir) / (name + "_roots_vs_gain_" + label_p(power_mw) + ".csv")).string();
        csv.write(csv_path);
        files.push_back(csv_path);
        manifest.runs.emplace_back(label_p(power_mw), params_to_json(base, d));

        auto col = [&](const std::string& key) {
            const auto it = std::find(csv.header.begin(), csv.header.end(), key);
            return static_cast<std::size_t>(it - csv.header.begin());
        };
        const std::size_t plus =
            col(imaginary_parts ? "im_root_plus_over_omega_m" : "re_root_plus_over_omega_m");
        const std::size_t minus =
            col(imaginary_parts ? "im_root_minus_over_omega_m" : "re_root_minus_over_omega_m");
        Series s_plus{label_p(power_mw) + " upper", {}, {}};
        Series s_minus{label_p(power_mw) + " lower", {}, {}};
        for (const auto& row : csv.rows) {
            if (row[plus].empty() || row[minus].empty()) continue;
            const double g = std::stod(row[0]);
            s_plus.x.push_back(g);
            s_plus.y.push_back(std::stod(row[plus]));
            s_minus.x.push_back(g);
            s_minus.y.push_back(std::stod(row[minus]));
        }
        series.push_back(std::move(s_plus));
        series.push_back(std::move(s_minus));
    }
    const std::string svg_path = (fs::path(out_dir) / (name + ".svg")).string();
    write_line_chart(svg_path, name, "G/kappa",
                     imaginary_parts ? "Im(root)/omega_m" : "Re(root)/omega_m", series);
    files.push_back(svg_path);
    return files;
}

std::vector<Curve> gain_curves() {
    std::vector<Curve> curves;
    for (double g : {0.0, 1.3, 1.45}) curves.push_back({label_g(g), reference_params(g, 6.9)});
    return curves;
}

std::vector<Curve> power_curves(double gain_over_kappa, bool degenerate_detuning) {
    std::vector<Curve> curves;
    for (double p : {0.6, 6.9, 10.7}) {
        SystemParams sp = reference_params(gain_over_kappa, p);
        if (degenerate_detuning) {
            const double g = sp.parametric_gain;
            sp.detuning.value = std::sqrt(sp.omega_m * sp.omega_m + 4.0 * g * g);
        }
        curves.push_back({label_p(p), sp});
    }
    return curves;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
}

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> run_preset(const std::string& name, const std::string& out_dir,
                                    const PresetOptions& opt) {
    if (!is_preset(name)) throw std::invalid_argument("unknown preset: " + name);
    fs::create_directories(out_dir);
    RunManifest manifest;
    manifest.command = "preset " + name;

    std::vector<std::string> files;
    if (name == "fig2") files = roots_figure(name, false, out_dir, opt, manifest);
    else if (name == "fig3") files = roots_figure(name, true, out_dir, opt, manifest);
    else if (name == "fig4")
        files = spectrum_figure(name, SpectrumKind::SQ, gain_curves(), out_dir, opt, manifest);
    else if (name == "fig5")
        files = spectrum_figure(name, SpectrumKind::Scout, gain_curves(), out_dir, opt, manifest);
    else if (name == "fig6")
        files = spectrum_figure(name, SpectrumKind::Sxout, gain_curves(), out_dir, opt, manifest);
    else if (name == "fig7")
        files = spectrum_figure(name, SpectrumKind::Syout, gain_curves(), out_dir, opt, manifest);
    else if (name == "fig8")
        files = spectrum_figure(name, SpectrumKind::SQ, power_curves(1.3, true), out_dir, opt,
                                manifest);
    else if (name == "fig9")
        files = spectrum_figure(name, SpectrumKind::SQ, power_curves(0.0, false), out_dir, opt,
                                manifest);

    for (const auto& f : files) manifest.add_output(f);
    const std::string manifest_path = (fs::path(out_dir) / (name + "_manifest.json")).string();
    manifest.write(manifest_path);
    files.push_back(manifest_path);
    return files;
}

} // namespace opamech::tools
