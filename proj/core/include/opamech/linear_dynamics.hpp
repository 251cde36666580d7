#ifndef OPAMECH_LINEAR_DYNAMICS_HPP
#define OPAMECH_LINEAR_DYNAMICS_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "opamech/params.hpp"
#include "opamech/steady_state.hpp"

namespace opamech {

// Drift matrix of the linearized Langevin equations for the state vector
// (dQ, dP, dx, dy), with dx = dc + dc^dag and dy = i(dc^dag - dc).
struct DriftMatrix {
    std::array<std::array<double, 4>, 4> a{};
};

// The three Routh-Hurwitz left-hand sides in printed order, the eigenvalues
// of A (descending real part), and the overall verdict. The verdict is
// derived from the inequalities alone; agreement with the eigenvalue signs
// is a cross-validated invariant, not enforced here.
struct StabilityReport {
    std::array<double, 3> rh_values{};
    std::array<bool, 3> rh_pass{};
    std::array<std::complex<double>, 4> eigenvalues_a{};
    bool stable = false;
};

struct SplittingEstimate {
    double omega_plus = 0.0;   // rad/s
    double omega_minus = 0.0;  // rad/s
    double g_squared = 0.0;    // (rad/s)^2
};

// Normal-mode structure read off the quartic d(omega). positive_branch holds
// the two roots with positive real part, sorted by descending real part.
// The closed-form estimates are absent (with reason) when their radicands go
// negative or g^2 < 0, i.e. outside the resolved-sideband approximation.
struct ModeAnalysis {
    std::array<std::complex<double>, 4> d_roots{};
    std::array<std::complex<double>, 2> positive_branch{};
    std::optional<SplittingEstimate> estimate;                       // closed-form
    std::optional<std::array<std::complex<double>, 2>> refined;      // keeps -2 i kappa omega
    std::string estimate_reason;  // set when the estimates are absent
    double g_squared = 0.0;
    double phi = 0.0;             // phase of c_s
    bool degenerate = false;      // two roots closer than 1e-6 relative
};

DriftMatrix drift_matrix(const SteadyState& ss, const DerivedConstants& d,
                         const SystemParams& p);

// The coupling bracket |c_s|^2 Delta + i G (c_s^2 e^{-i theta} - c_s*^2 e^{i theta}),
// analytically real; returned as complex so tests can bound the imaginary residue.
std::complex<double> coupling_bracket(const SteadyState& ss, const SystemParams& p);

StabilityReport routh_hurwitz(const SteadyState& ss, const DerivedConstants& d,
                              const SystemParams& p);

// Eigenvalues of i A as roots of the characteristic quartic (coefficients via
// the Faddeev-LeVerrier recursion), sorted by descending real part with ties
// broken by ascending imaginary part. Throws std::runtime_error if the root
// iteration does not converge within its cap.
std::array<std::complex<double>, 4> eigenvalues_iA(const DriftMatrix& A);

// Direct evaluation of
//   d(w) = 4 omega_m^3 chi^2 [Delta |c_s|^2 + i G (c_s^2 e^{-i theta} - c_s*^2 e^{i theta})]
//        + (w^2 - omega_m^2 + i gamma_m w) [(kappa - i w)^2 + Delta^2 - 4 G^2].
std::complex<double> d_omega(const SteadyState& ss, const DerivedConstants& d,
                             const SystemParams& p, std::complex<double> omega);

ModeAnalysis roots_of_d(const SteadyState& ss, const DerivedConstants& d,
                        const SystemParams& p);

// omega_pm^2 = (omega_m^2 + Delta^2 - 4G^2)/2
//              +- sqrt(((omega_m^2 - Delta^2 + 4G^2)/2)^2 + 4 omega_m^2 g^2),
// g^2 = omega_m chi^2 |c_s|^2 [Delta + 2 G sin(theta - 2 phi)].
// Throws std::domain_error("estimate invalid: ...") when g^2 or a radicand
// is negative.
SplittingEstimate splitting_estimate(const SteadyState& ss, const DerivedConstants& d,
                                     const SystemParams& p);

// Footnote refinement: solves the quartic obtained from d(omega) by dropping
// i gamma_m omega and kappa^2 while keeping -2 i kappa omega; returns the two
// roots with positive real part (descending). Errors as splitting_estimate.
std::array<std::complex<double>, 2> refined_splitting(const SteadyState& ss,
                                                      const DerivedConstants& d,
                                                      const SystemParams& p);

} // namespace opamech

#endif // OPAMECH_LINEAR_DYNAMICS_HPP
