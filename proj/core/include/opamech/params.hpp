#ifndef OPAMECH_PARAMS_HPP
#define OPAMECH_PARAMS_HPP

#include <string>
#include <vector>

#include "opamech/constants.hpp"

namespace opamech {

// How the laser-cavity detuning is specified.
//   Effective: the radiation-pressure-shifted detuning (the quantity the
//              published operating points fix, e.g. Delta = omega_m).
//   Bare:      omega_c - omega_L; the operating detunings then solve a
//              fifth-order equation and up to five branches coexist.
enum class DetuningMode { Effective, Bare };

struct DetuningSpec {
    DetuningMode mode = DetuningMode::Effective;
    double value = 0.0;  // rad/s; effective Delta or bare Delta_0 per mode
};

// All experimental inputs. Internal convention: every frequency-like
// quantity is angular (rad/s); conversions from Hz-style config keys happen
// once at parse time (see config.hpp).
struct SystemParams {
    double lambda_laser = 0.0;      // laser wavelength, m
    double cavity_length = 0.0;     // L, m
    double mass = 0.0;              // effective mirror mass, kg
    double kappa = 0.0;             // cavity amplitude decay rate, rad/s
    double omega_m = 0.0;           // mechanical frequency, rad/s
    double quality_factor = 0.0;    // Q' = omega_m / gamma_m
    double temperature = 0.0;       // bath temperature, K
    double parametric_gain = 0.0;   // OPA gain G, rad/s
    double parametric_phase = 0.0;  // OPA pump phase theta, rad
    double laser_power = 0.0;       // input power, W (>= 0; 0 means undriven)
    DetuningSpec detuning{};
};

// Constants derived once from SystemParams.
struct DerivedConstants {
    double omega_laser = 0.0;   // 2 pi c / lambda, rad/s
    double omega_cavity = 0.0;  // = omega_laser (effective mode) or omega_laser + Delta_0
    double chi = 0.0;           // optomechanical coupling, dimensionless
    double epsilon = 0.0;       // drive amplitude sqrt(2 kappa P / (hbar omega_L)), rad/s-ish units
    double gamma_m = 0.0;       // mechanical damping omega_m / Q', rad/s
};

struct Diagnostic {
    std::string code;     // short machine-readable tag, e.g. "resolved_sideband"
    std::string message;  // human-readable explanation
};

// chi = (1/omega_m)(omega_c/L) sqrt(hbar/(2 m omega_m)),
// epsilon = sqrt(2 kappa P / (hbar omega_L)), gamma_m = omega_m/Q'.
// Throws std::invalid_argument when lambda, L, m, omega_m or Q' is not
// strictly positive, or when kappa <= 0, P < 0, G < 0, T < 0.
DerivedConstants derive_constants(const SystemParams& p,
                                  const PhysicalConstants& consts = kConstants);

// Regime checks mirroring the resolved-sideband assumptions: warns when
// omega_m <= kappa, Delta <= 2G, or kappa <= gamma_m, and when the adiabatic
// condition omega_m << c/(2L) is violated (threshold: omega_m > 0.1 c/(2L)).
// In bare mode the Delta <= 2G check uses Delta_0 as a stand-in for the
// not-yet-solved effective detuning. Never mutates or rejects the input.
std::vector<Diagnostic> validate_params(const SystemParams& p,
                                        const PhysicalConstants& consts = kConstants);

} // namespace opamech

#endif // OPAMECH_PARAMS_HPP
