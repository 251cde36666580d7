#include "opamech/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace opamech {

namespace {

using Complex = std::complex<double>;

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("frequency grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("frequency grid must be strictly increasing");
}

void check_stable(const SteadyState& ss, const DerivedConstants& d, const SystemParams& p) {
    if (!routh_hurwitz(ss, d, p).stable)
        throw std::domain_error(
            "operating point is unstable: stationary spectra are undefined");
}

double coth(double x) {
    // tanh saturates cleanly for large |x|; x == 0 is handled by callers.
    return 1.0 / std::tanh(x);
}

} // namespace

NoiseModel NoiseModel::automatic(const SystemParams& p, const PhysicalConstants& consts) {
    const double ratio = consts.k_b * p.temperature / (consts.hbar * p.omega_m);
    return {ratio > 100.0 ? Mode::HighTemperature : Mode::ExactCoth, p.temperature};
}

NoiseModel NoiseModel::exact(double temperature_k) {
    return {Mode::ExactCoth, temperature_k};
}

NoiseModel NoiseModel::high_temperature(double temperature_k) {
    return {Mode::HighTemperature, temperature_k};
}

double NoiseModel::position_weight(double omega, const PhysicalConstants& consts) const {
    const double two_kbt_over_hbar = 2.0 * consts.k_b * temperature / consts.hbar;
    if (mode == Mode::HighTemperature) return two_kbt_over_hbar;
    if (temperature <= 0.0) return std::abs(omega);  // coth -> sign(omega)
    if (omega == 0.0) return two_kbt_over_hbar;      // removable singularity
    return omega * coth(consts.hbar * omega / (2.0 * consts.k_b * temperature));
}

double NoiseModel::output_weight(double omega, const PhysicalConstants& consts) const {
    const double two_kbt_over_hbar = 2.0 * consts.k_b * temperature / consts.hbar;
    if (mode == Mode::HighTemperature) return two_kbt_over_hbar - omega;
    if (temperature <= 0.0) return omega >= 0.0 ? 0.0 : -2.0 * omega;
    if (omega == 0.0) return two_kbt_over_hbar;
    return omega * (-1.0 + coth(consts.hbar * omega / (2.0 * consts.k_b * temperature)));
}

SpectrumResult sq_spectrum(const SteadyState& ss, const DerivedConstants& d,
                           const SystemParams& p, std::span<const double> grid,
                           const NoiseModel& noise) {
    check_grid(grid);
    check_stable(ss, d, p);

    const double g = p.parametric_gain;
    const double wm = p.omega_m;
    const double k = p.kappa;
    const double delta = ss.delta;
    const Complex phase{std::cos(p.parametric_phase), std::sin(p.parametric_phase)};
    const Complex cs2 = ss.c_s * ss.c_s;
    const double four_g2 = 4.0 * g * g;

    // 2G e^{i theta} c_s*^2 (k - i Delta) + c.c.; real by construction.
    const double gain_part =
        (2.0 * g * phase * std::conj(cs2) * Complex{k, -delta}).real() * 2.0;

    SpectrumResult out;
    out.kind = SpectrumKind::SQ;
    out.operating_point = ss;
    out.grid.assign(grid.begin(), grid.end());
    out.values.resize(grid.size());

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        const Complex dv = d_omega(ss, d, p, Complex{w, 0.0});
        const double rad_pressure =
            8.0 * wm * wm * d.chi * d.chi * k *
            ((k * k + w * w + delta * delta + four_g2) * ss.photon_number + gain_part);
        const double cavity_mod =
            (delta * delta + k * k - w * w - four_g2) * (delta * delta + k * k - w * w - four_g2) +
            4.0 * k * k * w * w;
        const double thermal =
            2.0 * (d.gamma_m / wm) * cavity_mod * noise.position_weight(w);
        out.values[i] = wm * wm / std::norm(dv) * (rad_pressure + thermal);
    }
    out.peaks = find_peaks(out.grid, out.values);
    return out;
}

OutputCoefficients output_coefficients(const SteadyState& ss, const DerivedConstants& d,
                                       const SystemParams& p, double omega) {
    const double g = p.parametric_gain;
    const double k = p.kappa;
    const double wm = p.omega_m;
    const double delta = ss.delta;
    const Complex i{0.0, 1.0};
    const Complex phase{std::cos(p.parametric_phase), std::sin(p.parametric_phase)};

    const Complex dv = d_omega(ss, d, p, Complex{omega, 0.0});
    const Complex cavity = (k - i * omega) * (k - i * omega) + delta * delta - 4.0 * g * g;
    const Complex w_num = (k - i * (omega + delta)) * ss.c_s - 2.0 * g * phase * std::conj(ss.c_s);
    const Complex x_num =
        (k - i * (omega + delta)) * std::conj(ss.c_s) + 2.0 * g * std::conj(phase) * ss.c_s;
    const Complex y_num = (k - i * (omega - delta)) * ss.c_s + 2.0 * g * phase * std::conj(ss.c_s);

    OutputCoefficients oc;
    oc.v = -std::sqrt(2.0 * k) * wm * wm * d.chi / dv * i * w_num;
    oc.e = 2.0 * k / cavity *
               (-2.0 * wm * wm * wm * d.chi * d.chi / dv * i * w_num * x_num +
                (k - i * (omega + delta))) -
           1.0;
    oc.f = 2.0 * k / cavity *
           (-2.0 * wm * wm * wm * d.chi * d.chi / dv * i * w_num * y_num + 2.0 * g * phase);
    return oc;
}

std::vector<SpectrumResult> output_spectra(const SteadyState& ss, const DerivedConstants& d,
                                           const SystemParams& p, std::span<const double> grid,
                                           const NoiseModel& noise,
                                           std::span<const SpectrumKind> which) {
    check_grid(grid);
    check_stable(ss, d, p);

    std::vector<SpectrumResult> results;
    for (SpectrumKind kind : which) {
        if (kind == SpectrumKind::SQ)
            throw std::invalid_argument("output_spectra handles Scout/Sxout/Syout only");
        SpectrumResult r;
        r.kind = kind;
        r.operating_point = ss;
        r.grid.assign(grid.begin(), grid.end());
        r.values.resize(grid.size());
        results.push_back(std::move(r));
    }
    if (results.empty()) return results;

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        const OutputCoefficients at_w = output_coefficients(ss, d, p, w);
        const OutputCoefficients at_mw = output_coefficients(ss, d, p, -w);
        const double thermal = 2.0 * (d.gamma_m / p.omega_m) * noise.output_weight(w);

        for (std::size_t s = 0; s < results.size(); ++s) {
            double value = 0.0;
            switch (results[s].kind) {
                case SpectrumKind::Scout:
                    value = std::norm(at_w.v) * thermal + std::norm(at_w.f);
                    break;
                case SpectrumKind::Sxout:
                    value = std::norm(at_w.v + std::conj(at_mw.v)) * thermal +
                            std::norm(at_w.f + std::conj(at_mw.e));
                    break;
                case SpectrumKind::Syout:
                    value = std::norm(at_w.v - std::conj(at_mw.v)) * thermal +
                            std::norm(at_w.f - std::conj(at_mw.e));
                    break;
                case SpectrumKind::SQ:
                    break;
            }
            results[s].values[i] = value;
        }
    }
    for (auto& r : results) r.peaks = find_peaks(r.grid, r.values);
    return results;
}

std::vector<Peak> find_peaks(std::span<const double> grid, std::span<const double> values,
                             double prominence_fraction) {
    if (grid.size() != values.size())
        throw std::invalid_argument("find_peaks: grid/values size mismatch");
    if (grid.size() < 5) throw std::invalid_argument("find_peaks: need at least 5 points");

    const std::size_t n = values.size();
    const double global_max = *std::max_element(values.begin(), values.end());
    const double threshold = prominence_fraction * global_max;

    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(values[i] > values[i - 1] && values[i] > values[i + 1])) continue;
        if (values[i] < threshold) continue;

        // 3-point quadratic refinement around the sample maximum.
        const double y0 = values[i - 1], y1 = values[i], y2 = values[i + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        double pos = grid[i], height = y1;
        if (denom < 0.0) {
            const double shift = 0.5 * (y0 - y2) / denom;  // in grid-step units
            const double step = 0.5 * (grid[i + 1] - grid[i - 1]);
            pos = grid[i] + shift * step;
            height = y1 - 0.25 * (y0 - y2) * shift;
        }

        // Half-height crossings by linear interpolation, walking outward.
        const double half = 0.5 * height;
        double left_x = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = i; j-- > 0;) {
            if (values[j] < half) {
                const double t = (half - values[j]) / (values[j + 1] - values[j]);
                left_x = grid[j] + t * (grid[j + 1] - grid[j]);
                break;
            }
        }
        double right_x = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values[j] < half) {
                const double t = (values[j - 1] - half) / (values[j - 1] - values[j]);
                right_x = grid[j - 1] + t * (grid[j] - grid[j - 1]);
                break;
            }
        }
        double fwhm;
        if (!std::isnan(left_x) && !std::isnan(right_x)) fwhm = right_x - left_x;
        else if (!std::isnan(left_x)) fwhm = 2.0 * (pos - left_x);
        else if (!std::isnan(right_x)) fwhm = 2.0 * (right_x - pos);
        else fwhm = grid.back() - grid.front();

        peaks.push_back({pos, height, fwhm});
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.position < b.position; });
    return peaks;
}

std::vector<double> frequency_grid(double omega_m, double lo_over_wm, double hi_over_wm, int n) {
    if (n < 2) throw std::invalid_argument("frequency_grid: need at least 2 points");
    if (!(hi_over_wm > lo_over_wm)) throw std::invalid_argument("frequency_grid: hi must exceed lo");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] =
            omega_m * (lo_over_wm + (hi_over_wm - lo_over_wm) * i / (n - 1));
    return grid;
}

const char* to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::SQ: return "SQ";
        case SpectrumKind::Scout: return "Scout";
        case SpectrumKind::Sxout: return "Sxout";
        case SpectrumKind::Syout: return "Syout";
    }
    return "unknown";
}

} // namespace opamech
