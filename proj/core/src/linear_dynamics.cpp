#include "opamech/linear_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "opamech/polynomial.hpp"

namespace opamech {

namespace {

using Complex = std::complex<double>;

void sort_descending_re(std::vector<Complex>& v) {
    std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() < b.imag();
    });
}

// Quartic of d(omega) in monic ascending form. K = kappa^2 + Delta^2 - 4G^2,
// B = Re of the coupling bracket:
//   -d(w) = w^4 + i(2k+gm) w^3 - (K + wm^2 + 2k gm) w^2
//           - i(2k wm^2 + gm K) w + (wm^2 K - 4 wm^3 chi^2 B).
std::vector<Complex> d_quartic_coefficients(const SteadyState& ss, const DerivedConstants& d,
                                            const SystemParams& p) {
    const double g = p.parametric_gain;
    const double big_k = p.kappa * p.kappa + ss.delta * ss.delta - 4.0 * g * g;
    const double b = coupling_bracket(ss, p).real();
    const double wm = p.omega_m;
    return {
        Complex{wm * wm * big_k - 4.0 * wm * wm * wm * d.chi * d.chi * b, 0.0},
        Complex{0.0, -(2.0 * p.kappa * wm * wm + d.gamma_m * big_k)},
        Complex{-(big_k + wm * wm + 2.0 * p.kappa * d.gamma_m), 0.0},
        Complex{0.0, 2.0 * p.kappa + d.gamma_m},
        Complex{1.0, 0.0},
    };
}

double g_squared_of(const SteadyState& ss, const DerivedConstants& d, const SystemParams& p,
                    double phi) {
    return p.omega_m * d.chi * d.chi * ss.photon_number *
           (ss.delta + 2.0 * p.parametric_gain * std::sin(p.parametric_phase - 2.0 * phi));
}

} // namespace

DriftMatrix drift_matrix(const SteadyState& ss, const DerivedConstants& d,
                         const SystemParams& p) {
    const double g = p.parametric_gain;
    const double cos_t = std::cos(p.parametric_phase);
    const double sin_t = std::sin(p.parametric_phase);
    const double re_cs = ss.c_s.real();
    const double im_cs = ss.c_s.imag();
    const double wm_chi = p.omega_m * d.chi;

    DriftMatrix m;
    m.a[0] = {0.0, p.omega_m, 0.0, 0.0};
    m.a[1] = {-p.omega_m, -d.gamma_m, 2.0 * wm_chi * re_cs, 2.0 * wm_chi * im_cs};
    m.a[2] = {-2.0 * wm_chi * im_cs, 0.0, 2.0 * g * cos_t - p.kappa, 2.0 * g * sin_t + ss.delta};
    m.a[3] = {2.0 * wm_chi * re_cs, 0.0, 2.0 * g * sin_t - ss.delta, -(2.0 * g * cos_t + p.kappa)};
    return m;
}

std::complex<double> coupling_bracket(const SteadyState& ss, const SystemParams& p) {
    const Complex phase{std::cos(p.parametric_phase), std::sin(p.parametric_phase)};
    const Complex cs2 = ss.c_s * ss.c_s;
    return ss.photon_number * ss.delta +
           Complex{0.0, 1.0} * p.parametric_gain * (cs2 * std::conj(phase) - std::conj(cs2) * phase);
}

StabilityReport routh_hurwitz(const SteadyState& ss, const DerivedConstants& d,
                              const SystemParams& p) {
    const double g = p.parametric_gain;
    const double k = p.kappa, gm = d.gamma_m, wm = p.omega_m;
    const double big_k = k * k + ss.delta * ss.delta - 4.0 * g * g;
    const double b = coupling_bracket(ss, p).real();

    StabilityReport r;
    r.rh_values[0] = 2.0 * k * (big_k + 2.0 * k * gm) + gm * (2.0 * k * gm + wm * wm);
    r.rh_values[1] =
        2.0 * wm * wm * wm * d.chi * d.chi * (2.0 * k + gm) * (2.0 * k + gm) * b +
        k * gm *
            (big_k * big_k + (2.0 * k * gm + gm * gm) * big_k +
             wm * wm *
                 (2.0 * (k * k + 4.0 * g * g - ss.delta * ss.delta) + wm * wm + 2.0 * k * gm));
    r.rh_values[2] = big_k - 4.0 * wm * d.chi * d.chi * b;

    for (int i = 0; i < 3; ++i) r.rh_pass[static_cast<std::size_t>(i)] = r.rh_values[static_cast<std::size_t>(i)] > 0.0;
    r.stable = r.rh_pass[0] && r.rh_pass[1] && r.rh_pass[2];

    const auto eig_ia = eigenvalues_iA(drift_matrix(ss, d, p));
    for (std::size_t i = 0; i < 4; ++i)
        r.eigenvalues_a[i] = Complex{0.0, -1.0} * eig_ia[i];
    return r;
}

std::array<std::complex<double>, 4> eigenvalues_iA(const DriftMatrix& A) {
    // Characteristic polynomial of the real matrix A by Faddeev-LeVerrier:
    // p(l) = l^4 + c1 l^3 + c2 l^2 + c3 l + c4.
    using Mat = std::array<std::array<double, 4>, 4>;
    auto matmul = [](const Mat& x, const Mat& y) {
        Mat z{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int l = 0; l < 4; ++l) s += x[i][l] * y[l][j];
                z[i][j] = s;
            }
        return z;
    };
    auto trace = [](const Mat& x) { return x[0][0] + x[1][1] + x[2][2] + x[3][3]; };

    Mat m = A.a;
    std::array<double, 4> c{};
    c[0] = -trace(m);
    for (int step = 1; step < 4; ++step) {
        Mat shifted = m;
        for (int i = 0; i < 4; ++i) shifted[i][i] += c[step - 1];
        m = matmul(A.a, shifted);
        c[step] = -trace(m) / static_cast<double>(step + 1);
    }

    // Eigenvalues of iA are the roots of q(mu) = p(-i mu):
    // q(mu) = mu^4 + i c1 mu^3 - c2 mu^2 - i c3 mu + c4.
    std::vector<Complex> coeffs = {
        Complex{c[3], 0.0},
        Complex{0.0, -c[2]},
        Complex{-c[1], 0.0},
        Complex{0.0, c[0]},
        Complex{1.0, 0.0},
    };
    std::vector<Complex> roots = poly::durand_kerner(std::move(coeffs), 1000);
    sort_descending_re(roots);
    return {roots[0], roots[1], roots[2], roots[3]};
}

std::complex<double> d_omega(const SteadyState& ss, const DerivedConstants& d,
                             const SystemParams& p, std::complex<double> omega) {
    const double wm = p.omega_m;
    const Complex bracket = coupling_bracket(ss, p);
    const Complex cavity = (p.kappa - Complex{0.0, 1.0} * omega) *
                               (p.kappa - Complex{0.0, 1.0} * omega) +
                           ss.delta * ss.delta -
                           4.0 * p.parametric_gain * p.parametric_gain;
    return 4.0 * wm * wm * wm * d.chi * d.chi * bracket +
           (omega * omega - wm * wm + Complex{0.0, 1.0} * d.gamma_m * omega) * cavity;
}

ModeAnalysis roots_of_d(const SteadyState& ss, const DerivedConstants& d,
                        const SystemParams& p) {
    ModeAnalysis out;
    out.phi = std::arg(ss.c_s);
    out.g_squared = g_squared_of(ss, d, p, out.phi);

    std::vector<Complex> roots = poly::durand_kerner(d_quartic_coefficients(ss, d, p), 1000);
    sort_descending_re(roots);
    for (std::size_t i = 0; i < 4; ++i) out.d_roots[i] = roots[i];

    // Two largest real parts; for the resolved-sideband regime these are the
    // Re > 0 pair mirrored (about the imaginary axis) by the other two.
    out.positive_branch = {roots[0], roots[1]};

    const double scale = std::max({std::abs(roots[0]), std::abs(roots[1]),
                                   std::abs(roots[2]), std::abs(roots[3])});
    for (std::size_t i = 0; i < 4 && !out.degenerate; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (std::abs(roots[i] - roots[j]) < 1e-6 * scale) {
                out.degenerate = true;
                break;
            }

    try {
        out.estimate = splitting_estimate(ss, d, p);
        out.refined = refined_splitting(ss, d, p);
    } catch (const std::domain_error& e) {
        out.estimate_reason = e.what();
    }
    return out;
}

SplittingEstimate splitting_estimate(const SteadyState& ss, const DerivedConstants& d,
                                     const SystemParams& p) {
    const double wm = p.omega_m;
    const double dg = ss.delta * ss.delta - 4.0 * p.parametric_gain * p.parametric_gain;
    const double g2 = g_squared_of(ss, d, p, std::arg(ss.c_s));
    if (g2 < 0.0)
        throw std::domain_error("estimate invalid: g^2 < 0");
    const double avg = 0.5 * (wm * wm + dg);
    const double radicand = 0.25 * (wm * wm - dg) * (wm * wm - dg) + 4.0 * wm * wm * g2;
    if (radicand < 0.0)
        throw std::domain_error("estimate invalid: negative radicand in omega_pm^2");
    const double split = std::sqrt(radicand);
    const double plus2 = avg + split, minus2 = avg - split;
    if (plus2 < 0.0 || minus2 < 0.0)
        throw std::domain_error("estimate invalid: omega_pm^2 negative");
    return {std::sqrt(plus2), std::sqrt(minus2), g2};
}

std::array<std::complex<double>, 2> refined_splitting(const SteadyState& ss,
                                                      const DerivedConstants& d,
                                                      const SystemParams& p) {
    const double wm = p.omega_m;
    const double dg = ss.delta * ss.delta - 4.0 * p.parametric_gain * p.parametric_gain;
    const double g2 = g_squared_of(ss, d, p, std::arg(ss.c_s));
    if (g2 < 0.0)
        throw std::domain_error("estimate invalid: g^2 < 0");

    // d(omega) with i gamma_m omega and kappa^2 dropped, -2 i kappa omega kept:
    //   w^4 + 2 i k w^3 - (wm^2 + dg) w^2 - 2 i k wm^2 w + wm^2 dg - 4 wm^2 g^2 = 0.
    std::vector<Complex> coeffs = {
        Complex{wm * wm * dg - 4.0 * wm * wm * g2, 0.0},
        Complex{0.0, -2.0 * p.kappa * wm * wm},
        Complex{-(wm * wm + dg), 0.0},
        Complex{0.0, 2.0 * p.kappa},
        Complex{1.0, 0.0},
    };
    std::vector<Complex> roots = poly::durand_kerner(std::move(coeffs), 1000);
    sort_descending_re(roots);
    return {roots[0], roots[1]};
}

} // namespace opamech
