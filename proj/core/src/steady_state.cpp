#include "opamech/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "opamech/polynomial.hpp"

namespace opamech {

namespace {

std::complex<double> drive_numerator(const SystemParams& p, double delta) {
    const std::complex<double> gain_term =
        2.0 * p.parametric_gain *
        std::complex<double>{std::cos(p.parametric_phase), std::sin(p.parametric_phase)};
    return std::complex<double>{p.kappa, -delta} + gain_term;
}

} // namespace

SteadyState steady_state_at_delta(const SystemParams& p, const DerivedConstants& d,
                                  double delta) {
    const double denom = p.kappa * p.kappa + delta * delta -
                         4.0 * p.parametric_gain * p.parametric_gain;
    const double floor = 1e-9 * (p.kappa * p.kappa + p.omega_m * p.omega_m);
    if (std::abs(denom) < floor)
        throw std::domain_error(
            "steady state diverges: kappa^2 + Delta^2 - 4G^2 below the parametric-oscillation floor");

    SteadyState ss;
    ss.delta = delta;
    ss.c_s = drive_numerator(p, delta) * d.epsilon / denom;
    ss.photon_number = std::norm(ss.c_s);
    ss.q_s = 2.0 * d.chi * ss.photon_number;
    ss.p_s = 0.0;
    ss.branch_index = 0;
    return ss;
}

std::vector<double> branch_quintic_coefficients(const SystemParams& p,
                                                const DerivedConstants& d, double delta0) {
    const double g = p.parametric_gain;
    const double k0 = p.kappa * p.kappa - 4.0 * g * g;
    const double c = 2.0 * p.omega_m * d.chi * d.chi * d.epsilon * d.epsilon;
    const double cos_t = std::cos(p.parametric_phase);
    const double sin_t = std::sin(p.parametric_phase);
    const double re_num = p.kappa + 2.0 * g * cos_t;

    // ascending powers of Delta; monic quintic
    return {
        c * (re_num * re_num + 4.0 * g * g * sin_t * sin_t) - k0 * k0 * delta0,
        k0 * k0 - 4.0 * c * g * sin_t,
        c - 2.0 * k0 * delta0,
        2.0 * k0,
        -delta0,
        1.0,
    };
}

std::vector<SteadyState> solve_branches(const SystemParams& p, const DerivedConstants& d,
                                        double delta0) {
    const double coupling = 2.0 * p.omega_m * d.chi * d.chi * d.epsilon * d.epsilon;
    std::vector<double> deltas;

    if (coupling == 0.0) {
        // No radiation-pressure shift (chi = 0 or undriven): the quintic
        // degenerates to (Delta - Delta_0)(Delta^2 + kappa^2 - 4G^2)^2 whose
        // extra roots are parametric-divergence artifacts, not steady states.
        deltas.push_back(delta0);
    } else {
        const std::vector<double> coeffs = branch_quintic_coefficients(p, d, delta0);
        const auto roots = poly::companion_roots(coeffs);
        const double imag_tol = 1e-6 * std::max(p.kappa, p.omega_m);
        for (const auto& r : roots) {
            if (std::abs(r.imag()) >= imag_tol) continue;
            deltas.push_back(poly::polish_real_root(coeffs, r.real()));
        }
        if (deltas.empty())
            throw std::runtime_error("solve_branches: no real root found for the branch quintic");
    }

    std::sort(deltas.begin(), deltas.end());
    std::vector<SteadyState> out;
    out.reserve(deltas.size());
    const double floor = 1e-9 * (p.kappa * p.kappa + p.omega_m * p.omega_m);
    for (double delta : deltas) {
        const double denom = p.kappa * p.kappa + delta * delta -
                             4.0 * p.parametric_gain * p.parametric_gain;
        if (std::abs(denom) < floor) continue;  // parametric-divergence artifact
        SteadyState ss = steady_state_at_delta(p, d, delta);
        ss.branch_index = static_cast<int>(out.size());
        out.push_back(ss);
    }
    if (out.empty())
        throw std::runtime_error("solve_branches: every candidate branch sits on the divergence floor");
    return out;
}

SteadyState operating_point(const SystemParams& p, const DerivedConstants& d,
                            int branch_index) {
    if (p.detuning.mode == DetuningMode::Effective)
        return steady_state_at_delta(p, d, p.detuning.value);
    const auto branches = solve_branches(p, d, p.detuning.value);
    if (branch_index < 0 || branch_index >= static_cast<int>(branches.size()))
        throw std::domain_error("operating_point: branch index out of range (" +
                                std::to_string(branches.size()) + " branches)");
    return branches[static_cast<std::size_t>(branch_index)];
}

} // namespace opamech
