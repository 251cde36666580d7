#ifndef OPAMECH_POLYNOMIAL_HPP
#define OPAMECH_POLYNOMIAL_HPP

#include <complex>
#include <span>
#include <vector>

namespace opamech::poly {

using Complex = std::complex<double>;

// Coefficient convention throughout: ascending powers, c[k] multiplies x^k,
// and the polynomial is monic (c.back() == 1 after normalization).

// Horner evaluation.
Complex evaluate(std::span<const Complex> coeffs, Complex x);
Complex evaluate(std::span<const double> coeffs, Complex x);

// Derivative evaluation (Horner on the derivative coefficients).
Complex evaluate_derivative(std::span<const Complex> coeffs, Complex x);

// All roots by Durand-Kerner simultaneous iteration with the classic
// (0.4+0.9i)^k start, randomly perturbed from a fixed seed so symmetric
// configurations cannot trap the iteration while results stay deterministic.
// Coefficients are rescaled internally so root magnitudes are O(1).
// Throws std::runtime_error if the iteration cap is exceeded.
std::vector<Complex> durand_kerner(std::vector<Complex> coeffs, int max_iterations = 1000);
std::vector<Complex> durand_kerner(const std::vector<double>& coeffs, int max_iterations = 1000);

// All roots of a real monic polynomial as the eigenvalues of its companion
// matrix (upper Hessenberg, coefficients in the last column), computed by a
// shifted complex QR iteration. Throws std::runtime_error on non-convergence.
std::vector<Complex> companion_roots(const std::vector<double>& coeffs, int max_iterations = 1000);

// Newton polish of a root candidate on the original real coefficients.
// Stops early when the residual reaches the backward-stable floor.
double polish_real_root(std::span<const double> coeffs, double x, int steps = 50);

} // namespace opamech::poly

#endif // OPAMECH_POLYNOMIAL_HPP
