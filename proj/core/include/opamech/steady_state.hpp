#ifndef OPAMECH_STEADY_STATE_HPP
#define OPAMECH_STEADY_STATE_HPP

#include <complex>
#include <vector>

#include "opamech/params.hpp"

namespace opamech {

// One classical operating point of the cavity-mirror system:
//   P_s = 0,  Q_s = 2 chi |c_s|^2,
//   c_s = (kappa - i Delta + 2 G e^{i theta}) eps / (kappa^2 + Delta^2 - 4 G^2).
struct SteadyState {
    double delta = 0.0;                  // effective detuning, rad/s
    std::complex<double> c_s{0.0, 0.0};  // steady cavity field amplitude
    double q_s = 0.0;                    // mirror displacement (dimensionless Q)
    double p_s = 0.0;                    // always 0 at steady state
    double photon_number = 0.0;          // |c_s|^2
    int branch_index = 0;                // 0-based, ordered by Delta ascending
};

// Closed-form steady state at a given effective detuning (branch_index 0).
// Throws std::domain_error when |kappa^2 + Delta^2 - 4G^2| falls below the
// divergence floor 1e-9 (kappa^2 + omega_m^2): at that point the parametric
// oscillation diverges and no meaningful operating point exists.
SteadyState steady_state_at_delta(const SystemParams& p, const DerivedConstants& d,
                                  double delta);

// All real operating branches for a bare detuning Delta_0 = omega_c - omega_L:
// real solutions of the quintic
//   (Delta_0 - Delta)(kappa^2 + Delta^2 - 4G^2)^2
//       = 2 omega_m chi^2 eps^2 |kappa - i Delta + 2 G e^{i theta}|^2,
// found as companion-matrix eigenvalues and Newton-polished. Between 1 and 5
// branches, sorted by Delta ascending with branch_index assigned in order.
// Throws std::runtime_error when no real root survives (numerical failure;
// a real quintic always has at least one).
std::vector<SteadyState> solve_branches(const SystemParams& p, const DerivedConstants& d,
                                        double delta0);

// Monic ascending coefficients of the branch quintic in Delta; exposed for
// the dense-scan oracle used by the tests.
std::vector<double> branch_quintic_coefficients(const SystemParams& p,
                                                const DerivedConstants& d, double delta0);

// Operating point per the params' detuning spec: closed form in effective
// mode, the branch with the given index in bare mode.
SteadyState operating_point(const SystemParams& p, const DerivedConstants& d,
                            int branch_index = 0);

} // namespace opamech

#endif // OPAMECH_STEADY_STATE_HPP
