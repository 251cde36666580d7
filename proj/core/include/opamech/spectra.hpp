#ifndef OPAMECH_SPECTRA_HPP
#define OPAMECH_SPECTRA_HPP

#include <complex>
#include <span>
#include <vector>

#include "opamech/linear_dynamics.hpp"
#include "opamech/params.hpp"
#include "opamech/steady_state.hpp"

namespace opamech {

enum class SpectrumKind { SQ, Scout, Sxout, Syout };

// Thermal-noise model. HighTemperature replaces coth(hbar w / 2 kB T) by
// 2 kB T / (hbar w) and [-1 + coth] by (2 kB T / (hbar w) - 1) exactly.
struct NoiseModel {
    enum class Mode { ExactCoth, HighTemperature };
    Mode mode = Mode::ExactCoth;
    double temperature = 0.0;  // K

    // HighTemperature when kB T / (hbar omega_m) > 100, else ExactCoth.
    static NoiseModel automatic(const SystemParams& p,
                                const PhysicalConstants& consts = kConstants);
    static NoiseModel exact(double temperature_k);
    static NoiseModel high_temperature(double temperature_k);

    // w * coth(hbar w / 2 kB T); analytic limit 2 kB T / hbar at w = 0.
    double position_weight(double omega, const PhysicalConstants& consts = kConstants) const;
    // w * [-1 + coth(hbar w / 2 kB T)]; same limit at w = 0.
    double output_weight(double omega, const PhysicalConstants& consts = kConstants) const;
};

// V(w), E(w), F(w) of the output-field relation
// dc_out = V xi + E dc_in + F dc_in^dag(-w), at one frequency.
struct OutputCoefficients {
    std::complex<double> v{0.0, 0.0};
    std::complex<double> e{0.0, 0.0};
    std::complex<double> f{0.0, 0.0};
};

struct Peak {
    double position = 0.0;  // rad/s
    double height = 0.0;    // spectrum units
    double fwhm = 0.0;      // rad/s
};

struct SpectrumResult {
    SpectrumKind kind = SpectrumKind::SQ;
    std::vector<double> grid;    // rad/s, strictly increasing
    std::vector<double> values;  // same length as grid
    std::vector<Peak> peaks;
    SteadyState operating_point;
};

// Mirror position spectrum S_Q(w) evaluated termwise on the grid:
// radiation-pressure term plus thermal term, divided by |d(w)|^2.
// Preconditions: stable operating point (checked via routh_hurwitz; throws
// std::domain_error otherwise) and a nonempty strictly increasing grid.
SpectrumResult sq_spectrum(const SteadyState& ss, const DerivedConstants& d,
                           const SystemParams& p, std::span<const double> grid,
                           const NoiseModel& noise);

OutputCoefficients output_coefficients(const SteadyState& ss, const DerivedConstants& d,
                                       const SystemParams& p, double omega);

// Output-field spectra S_cout / S_xout / S_yout; negative-frequency
// coefficients are evaluated directly at -w, no symmetry shortcut.
std::vector<SpectrumResult> output_spectra(const SteadyState& ss, const DerivedConstants& d,
                                           const SystemParams& p, std::span<const double> grid,
                                           const NoiseModel& noise,
                                           std::span<const SpectrumKind> which);

// Strict local maxima rising above prominence_fraction of the global
// maximum; position/height refined by 3-point quadratic interpolation, FWHM
// from linearly interpolated half-height crossings. Needs >= 5 points.
std::vector<Peak> find_peaks(std::span<const double> grid, std::span<const double> values,
                             double prominence_fraction = 0.05);

// Uniform grid of n points over [lo, hi] * omega_m.
std::vector<double> frequency_grid(double omega_m, double lo_over_wm = 0.5,
                                   double hi_over_wm = 1.5, int n = 4001);

const char* to_string(SpectrumKind kind);

} // namespace opamech

#endif // OPAMECH_SPECTRA_HPP
