#ifndef OPAMECH_TOOLS_RUNNER_HPP
#define OPAMECH_TOOLS_RUNNER_HPP

#include <set>
#include <string>
#include <vector>

#include "opamech/config.hpp"
#include "opamech/spectra.hpp"

#include "csv.hpp"
#include "manifest.hpp"

namespace opamech::tools {

enum class SweepAxis { ParametricGain, LaserPower, EffectiveDetuning, BareDetuning };

// Axis units are the config's normalized ones: G/kappa, mW, Delta/omega_m.
SweepAxis axis_from_string(const std::string& s);
const char* axis_column_name(SweepAxis axis);

enum class Output {
    Roots, Eigenvalues, Stability, SQ, Scout, Sxout, Syout, SplittingEstimate, PhotonNumber
};
std::set<Output> outputs_from_string(const std::string& csv_list);

struct GridSpec {
    double lo_over_wm = 0.5;
    double hi_over_wm = 1.5;
    int points = 4001;
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::ParametricGain;
    std::vector<double> values;  // nonempty, finite, strictly monotone
    std::set<Output> outputs{Output::Roots, Output::Stability, Output::PhotonNumber,
                             Output::SplittingEstimate};
    GridSpec grid;
    int branch_index = 0;  // bare-detuning mode branch selection
    int workers = 1;
};

// Applies one axis value to a parameter set (normalized axis units).
SystemParams apply_axis(const SystemParams& base, SweepAxis axis, double value);

// One CSV row per axis value, stable column set; per-point failures are
// recorded in the trailing `error` column and the run continues.
CsvWriter run_sweep(const SystemParams& base, const SweepSpec& spec,
                    const NoiseModel* noise_override = nullptr);

struct PointOptions {
    std::vector<SpectrumKind> spectra{SpectrumKind::SQ};
    GridSpec grid;
    int branch_index = 0;
    NoiseModel const* noise_override = nullptr;
};

struct PointOutcome {
    int exit_code = 0;  // 2 when spectra were requested at an unstable point
    std::vector<std::string> files;
};

PointOutcome run_point(const SystemParams& p, const PointOptions& opt,
                       const std::string& out_dir, RunManifest& manifest);

struct BoundaryResult {
    double critical_value = 0.0;  // axis units
    int failing_condition = 0;    // 1-based index into the Routh-Hurwitz triple
    double stable_end = 0.0;
    double unstable_end = 0.0;
};

// Bisects the Routh-Hurwitz verdict along the axis to an absolute tolerance
// of 1e-3 of the initial bracket width. Throws std::domain_error when the
// verdicts at lo and hi agree.
BoundaryResult find_stability_boundary(const SystemParams& base, SweepAxis axis,
                                       double lo, double hi, int branch_index = 0);

} // namespace opamech::tools

#endif
