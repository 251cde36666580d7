#include "runner.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "opamech/linear_dynamics.hpp"

namespace opamech::tools {

namespace {

namespace fs = std::filesystem;

const std::vector<SpectrumKind> kSpectrumOrder = {SpectrumKind::SQ, SpectrumKind::Scout,
                                                  SpectrumKind::Sxout, SpectrumKind::Syout};

Output output_of_kind(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::SQ: return Output::SQ;
        case SpectrumKind::Scout: return Output::Scout;
        case SpectrumKind::Sxout: return Output::Sxout;
        case SpectrumKind::Syout: return Output::Syout;
    }
    throw std::logic_error("unreachable");
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

SweepAxis axis_from_string(const std::string& s) {
    const std::string v = lower(s);
    if (v == "parametric_gain" || v == "g" || v == "gain") return SweepAxis::ParametricGain;
    if (v == "laser_power" || v == "power" || v == "p") return SweepAxis::LaserPower;
    if (v == "effective_detuning" || v == "delta") return SweepAxis::EffectiveDetuning;
    if (v == "bare_detuning" || v == "delta0") return SweepAxis::BareDetuning;
    throw std::invalid_argument("unknown sweep axis: " + s);
}

const char* axis_column_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::ParametricGain: return "g_over_kappa";
        case SweepAxis::LaserPower: return "power_mw";
        case SweepAxis::EffectiveDetuning: return "delta_over_omega_m";
        case SweepAxis::BareDetuning: return "delta0_over_omega_m";
    }
    return "axis";
}

std::set<Output> outputs_from_string(const std::string& csv_list) {
    std::set<Output> out;
    std::size_t start = 0;
    while (start <= csv_list.size()) {
        std::size_t pos = csv_list.find(',', start);
        if (pos == std::string::npos) pos = csv_list.size();
        const std::string tok = lower(csv_list.substr(start, pos - start));
        start = pos + 1;
        if (tok.empty()) continue;
        if (tok == "roots") out.insert(Output::Roots);
        else if (tok == "eigenvalues") out.insert(Output::Eigenvalues);
        else if (tok == "stability") out.insert(Output::Stability);
        else if (tok == "sq") out.insert(Output::SQ);
        else if (tok == "scout") out.insert(Output::Scout);
        else if (tok == "sxout") out.insert(Output::Sxout);
        else if (tok == "syout") out.insert(Output::Syout);
        else if (tok == "splitting_estimate") out.insert(Output::SplittingEstimate);
        else if (tok == "photon_number") out.insert(Output::PhotonNumber);
        else if (tok == "none") continue;
        else throw std::invalid_argument("unknown output: " + tok);
    }
    return out;
}

SystemParams apply_axis(const SystemParams& base, SweepAxis axis, double value) {
    SystemParams p = base;
    switch (axis) {
        case SweepAxis::ParametricGain: p.parametric_gain = value * p.kappa; break;
        case SweepAxis::LaserPower: p.laser_power = value * 1e-3; break;
        case SweepAxis::EffectiveDetuning:
            p.detuning = {DetuningMode::Effective, value * p.omega_m};
            break;
        case SweepAxis::BareDetuning:
            p.detuning = {DetuningMode::Bare, value * p.omega_m};
            break;
    }
    return p;
}

CsvWriter run_sweep(const SystemParams& base, const SweepSpec& spec,
                    const NoiseModel* noise_override) {
    if (spec.values.empty()) throw std::invalid_argument("sweep values must be nonempty");
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        if (!std::isfinite(spec.values[i]))
            throw std::invalid_argument("sweep values must be finite");
        if (i > 0 && !(spec.values[i] > spec.values[i - 1]) && !(spec.values[i] < spec.values[i - 1]))
            throw std::invalid_argument("sweep values must be strictly monotone");
        if (i > 1) {
            const bool up = spec.values[1] > spec.values[0];
            if (up != (spec.values[i] > spec.values[i - 1]))
                throw std::invalid_argument("sweep values must be strictly monotone");
        }
    }

    CsvWriter csv;
    csv.header = {axis_column_name(spec.axis), "delta_rad_s", "delta_over_omega_m"};
    if (spec.outputs.contains(Output::PhotonNumber)) csv.header.push_back("photon_number");
    if (spec.outputs.contains(Output::Stability))
        for (const char* h : {"rh1", "rh2", "rh3", "stable"}) csv.header.push_back(h);
    if (spec.outputs.contains(Output::Roots))
        for (const char* h :
             {"re_root_plus", "im_root_plus", "re_root_minus", "im_root_minus",
              "re_root_plus_over_omega_m", "im_root_plus_over_omega_m",
              "re_root_minus_over_omega_m", "im_root_minus_over_omega_m"})
            csv.header.push_back(h);
    if (spec.outputs.contains(Output::Eigenvalues))
        for (int i = 1; i <= 4; ++i) {
            csv.header.push_back("eig_a" + std::to_string(i) + "_re");
            csv.header.push_back("eig_a" + std::to_string(i) + "_im");
        }
    if (spec.outputs.contains(Output::SplittingEstimate))
        for (const char* h : {"omega_plus_est_over_omega_m", "omega_minus_est_over_omega_m",
                              "g_squared"})
            csv.header.push_back(h);
    std::vector<SpectrumKind> kinds;
    for (SpectrumKind kind : kSpectrumOrder)
        if (spec.outputs.contains(output_of_kind(kind))) kinds.push_back(kind);
    for (SpectrumKind kind : kinds) {
        const std::string stem = lower(to_string(kind));
        csv.header.push_back(stem + "_peak_count");
        for (int i = 1; i <= 2; ++i) {
            csv.header.push_back(stem + "_peak" + std::to_string(i) + "_pos_over_omega_m");
            csv.header.push_back(stem + "_peak" + std::to_string(i) + "_height");
            csv.header.push_back(stem + "_peak" + std::to_string(i) + "_fwhm_over_omega_m");
        }
    }
    csv.header.push_back("error");
    const std::size_t n_cols = csv.header.size();

    csv.rows.assign(spec.values.size(), {});
    std::atomic<std::size_t> next{0};

    auto evaluate_row = [&](std::size_t idx) {
        std::vector<std::string> row;
        row.reserve(n_cols);
        row.push_back(format_number(spec.values[idx]));
        std::string error;
        try {
            const SystemParams p = apply_axis(base, spec.axis, spec.values[idx]);
            const DerivedConstants d = derive_constants(p);
            const SteadyState ss = operating_point(p, d, spec.branch_index);
            const double wm = p.omega_m;

            row.push_back(format_number(ss.delta));
            row.push_back(format_number(ss.delta / wm));
            if (spec.outputs.contains(Output::PhotonNumber))
                row.push_back(format_number(ss.photon_number));

            StabilityReport report;
            const bool need_stability = spec.outputs.contains(Output::Stability) ||
                                        spec.outputs.contains(Output::Eigenvalues) || !kinds.empty();
            if (need_stability) report = routh_hurwitz(ss, d, p);
            if (spec.outputs.contains(Output::Stability)) {
                row.push_back(format_number(report.rh_values[0]));
                row.push_back(format_number(report.rh_values[1]));
                row.push_back(format_number(report.rh_values[2]));
                row.push_back(report.stable ? "1" : "0");
            }
            ModeAnalysis modes;
            if (spec.outputs.contains(Output::Roots) ||
                spec.outputs.contains(Output::SplittingEstimate))
                modes = roots_of_d(ss, d, p);
            if (spec.outputs.contains(Output::Roots)) {
                for (const auto& r : modes.positive_branch) {
                    row.push_back(format_number(r.real()));
                    row.push_back(format_number(r.imag()));
                }
                for (const auto& r : modes.positive_branch) {
                    row.push_back(format_number(r.real() / wm));
                    row.push_back(format_number(r.imag() / wm));
                }
            }
            if (spec.outputs.contains(Output::Eigenvalues))
                for (const auto& e : report.eigenvalues_a) {
                    row.push_back(format_number(e.real()));
                    row.push_back(format_number(e.imag()));
                }
            if (spec.outputs.contains(Output::SplittingEstimate)) {
                if (modes.estimate) {
                    row.push_back(format_number(modes.estimate->omega_plus / wm));
                    row.push_back(format_number(modes.estimate->omega_minus / wm));
                    row.push_back(format_number(modes.estimate->g_squared));
                } else {
                    row.insert(row.end(), {"", "", ""});
                    if (error.empty()) error = sanitize_cell(modes.estimate_reason);
                }
            }
            if (!kinds.empty()) {
                const NoiseModel noise =
                    noise_override ? *noise_override : NoiseModel::automatic(p);
                const auto grid =
                    frequency_grid(wm, spec.grid.lo_over_wm, spec.grid.hi_over_wm, spec.grid.points);
                for (SpectrumKind kind : kinds) {
                    std::vector<Peak> peaks;
                    if (kind == SpectrumKind::SQ) {
                        peaks = sq_spectrum(ss, d, p, grid, noise).peaks;
                    } else {
                        const SpectrumKind one[] = {kind};
                        peaks = output_spectra(ss, d, p, grid, noise, one)[0].peaks;
                    }
                    row.push_back(format_number(static_cast<double>(peaks.size())));
                    for (std::size_t i = 0; i < 2; ++i) {
                        if (i < peaks.size()) {
                            row.push_back(format_number(peaks[i].position / wm));
                            row.push_back(format_number(peaks[i].height));
                            row.push_back(format_number(peaks[i].fwhm / wm));
                        } else {
                            row.insert(row.end(), {"", "", ""});
                        }
                    }
                }
            }
        } catch (const std::exception& e) {
            error = sanitize_cell(e.what());
            row.resize(n_cols - 1);  // pad missing cells
        }
        row.resize(n_cols - 1);
        row.push_back(error);
        csv.rows[idx] = std::move(row);
    };

    const int workers = std::max(1, spec.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < spec.values.size(); ++i) evaluate_row(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                while (true) {
                    const std::size_t idx = next.fetch_add(1);
                    if (idx >= spec.values.size()) return;
                    evaluate_row(idx);
                }
            });
        for (auto& t : pool) t.join();
    }
    return csv;
}

PointOutcome run_point(const SystemParams& p, const PointOptions& opt,
                       const std::string& out_dir, RunManifest& manifest) {
    fs::create_directories(out_dir);
    const DerivedConstants d = derive_constants(p);
    const double wm = p.omega_m;

    nlohmann::json j;
    j["params"] = nlohmann::json::parse(params_to_json(p, d));
    j["diagnostics"] = nlohmann::json::array();
    for (const auto& diag : validate_params(p))
        j["diagnostics"].push_back({{"code", diag.code}, {"message", diag.message}});

    std::vector<SteadyState> branches;
    if (p.detuning.mode == DetuningMode::Effective)
        branches.push_back(steady_state_at_delta(p, d, p.detuning.value));
    else
        branches = solve_branches(p, d, p.detuning.value);

    auto complex_json = [](const std::complex<double>& z) {
        return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
    };

    j["branches"] = nlohmann::json::array();
    for (const auto& b : branches) {
        nlohmann::json bj;
        bj["branch_index"] = b.branch_index;
        bj["delta_rad_s"] = b.delta;
        bj["delta_over_omega_m"] = b.delta / wm;
        bj["c_s"] = complex_json(b.c_s);
        bj["q_s"] = b.q_s;
        bj["p_s"] = b.p_s;
        bj["photon_number"] = b.photon_number;
        j["branches"].push_back(bj);
    }

    if (opt.branch_index < 0 || opt.branch_index >= static_cast<int>(branches.size()))
        throw std::domain_error("branch index out of range (" +
                                std::to_string(branches.size()) + " branches)");
    const SteadyState& ss = branches[static_cast<std::size_t>(opt.branch_index)];
    j["selected_branch"] = opt.branch_index;

    const StabilityReport report = routh_hurwitz(ss, d, p);
    j["stability"] = {
        {"rh_values", {report.rh_values[0], report.rh_values[1], report.rh_values[2]}},
        {"rh_pass", {report.rh_pass[0], report.rh_pass[1], report.rh_pass[2]}},
        {"stable", report.stable},
    };
    j["stability"]["eigenvalues_a"] = nlohmann::json::array();
    for (const auto& e : report.eigenvalues_a)
        j["stability"]["eigenvalues_a"].push_back(complex_json(e));

    const ModeAnalysis modes = roots_of_d(ss, d, p);
    nlohmann::json mj;
    mj["d_roots"] = nlohmann::json::array();
    for (const auto& r : modes.d_roots) mj["d_roots"].push_back(complex_json(r));
    mj["positive_branch"] = {complex_json(modes.positive_branch[0]),
                             complex_json(modes.positive_branch[1])};
    mj["g_squared"] = modes.g_squared;
    mj["phi"] = modes.phi;
    mj["degenerate"] = modes.degenerate;
    if (modes.estimate) {
        mj["omega_plus"] = modes.estimate->omega_plus;
        mj["omega_minus"] = modes.estimate->omega_minus;
    }
    if (modes.refined)
        mj["refined"] = {complex_json((*modes.refined)[0]), complex_json((*modes.refined)[1])};
    if (!modes.estimate_reason.empty()) mj["estimate_reason"] = modes.estimate_reason;
    j["modes"] = mj;

    PointOutcome outcome;
    CsvWriter peaks_csv;
    peaks_csv.header = {"kind", "position_rad_s", "position_over_omega_m",
                        "height", "fwhm_rad_s", "fwhm_over_omega_m"};

    const bool want_spectra = !opt.spectra.empty();
    if (want_spectra && !report.stable) {
        j["spectra_skipped"] = "operating point is unstable";
        outcome.exit_code = 2;
    } else if (want_spectra) {
        const NoiseModel noise =
            opt.noise_override ? *opt.noise_override : NoiseModel::automatic(p);
        const auto grid =
            frequency_grid(wm, opt.grid.lo_over_wm, opt.grid.hi_over_wm, opt.grid.points);
        j["spectra"] = nlohmann::json::array();
        for (SpectrumKind kind : opt.spectra) {
            SpectrumResult res;
            if (kind == SpectrumKind::SQ) {
                res = sq_spectrum(ss, d, p, grid, noise);
            } else {
                const SpectrumKind one[] = {kind};
                res = std::move(output_spectra(ss, d, p, grid, noise, one)[0]);
            }
            CsvWriter spec_csv;
            spec_csv.header = {"omega_rad_s", "omega_over_omega_m", "value"};
            if (kind == SpectrumKind::SQ) spec_csv.header.push_back("value_times_gamma_m");
            for (std::size_t i = 0; i < res.grid.size(); ++i) {
                std::vector<std::string> row = {format_number(res.grid[i]),
                                                format_number(res.grid[i] / wm),
                                                format_number(res.values[i])};
                if (kind == SpectrumKind::SQ)
                    row.push_back(format_number(res.values[i] * d.gamma_m));
                spec_csv.rows.push_back(std::move(row));
            }
            const std::string fname =
                "spectrum_" + lower(to_string(kind)) + ".csv";
            const std::string fpath = (fs::path(out_dir) / fname).string();
            spec_csv.write(fpath);
            manifest.add_output(fpath);
            outcome.files.push_back(fpath);

            nlohmann::json sj;
            sj["kind"] = to_string(kind);
            sj["file"] = fname;
            sj["peaks"] = nlohmann::json::array();
            for (const auto& pk : res.peaks) {
                sj["peaks"].push_back({{"position_rad_s", pk.position},
                                       {"position_over_omega_m", pk.position / wm},
                                       {"height", pk.height},
                                       {"fwhm_rad_s", pk.fwhm}});
                peaks_csv.rows.push_back({to_string(kind), format_number(pk.position),
                                          format_number(pk.position / wm),
                                          format_number(pk.height), format_number(pk.fwhm),
                                          format_number(pk.fwhm / wm)});
            }
            j["spectra"].push_back(sj);
        }
        const std::string peaks_path = (fs::path(out_dir) / "peaks.csv").string();
        peaks_csv.write(peaks_path);
        manifest.add_output(peaks_path);
        outcome.files.push_back(peaks_path);
    }

    const std::string json_path = (fs::path(out_dir) / "point.json").string();
    std::ofstream jf(json_path, std::ios::binary);
    if (!jf) throw std::runtime_error("cannot write " + json_path);
    jf << j.dump(2) << '\n';
    jf.close();
    manifest.add_output(json_path);
    outcome.files.push_back(json_path);
    return outcome;
}

BoundaryResult find_stability_boundary(const SystemParams& base, SweepAxis axis, double lo,
                                       double hi, int branch_index) {
    auto verdict = [&](double value) {
        const SystemParams p = apply_axis(base, axis, value);
        const DerivedConstants d = derive_constants(p);
        const SteadyState ss = operating_point(p, d, branch_index);
        return routh_hurwitz(ss, d, p);
    };
    const bool stable_lo = verdict(lo).stable;
    const bool stable_hi = verdict(hi).stable;
    if (stable_lo == stable_hi)
        throw std::domain_error("stability verdict does not differ between lo and hi");

    const double tol = 1e-3 * std::abs(hi - lo);
    double a = lo, b = hi;
    while (std::abs(b - a) > tol) {
        const double mid = 0.5 * (a + b);
        if (verdict(mid).stable == stable_lo) a = mid;
        else b = mid;
    }
    BoundaryResult r;
    r.critical_value = 0.5 * (a + b);
    r.stable_end = stable_lo ? a : b;
    r.unstable_end = stable_lo ? b : a;
    const StabilityReport rep = verdict(r.unstable_end);
    r.failing_condition = 0;
    for (int i = 0; i < 3; ++i)
        if (!rep.rh_pass[static_cast<std::size_t>(i)]) { r.failing_condition = i + 1; break; }
    return r;
}

} // namespace opamech::tools
