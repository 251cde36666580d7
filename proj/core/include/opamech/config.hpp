#ifndef OPAMECH_CONFIG_HPP
#define OPAMECH_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "opamech/params.hpp"

namespace opamech {

// Raised for any malformed config; the message always names the offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat JSON document with exactly these keys (user-facing units in the key
// names; converted to SI/angular once, here):
//   lambda_nm, cavity_length_mm, mass_ng, kappa_hz (kappa/2pi),
//   omega_m_hz (omega_m/2pi), quality_factor, temperature_mk,
//   parametric_gain_over_kappa, parametric_phase_rad, laser_power_mw,
//   detuning_mode ("effective" | "bare"), detuning_over_omega_m.
// Missing, unknown, non-numeric, or out-of-range keys raise ConfigError.
SystemParams parse_config_json(const std::string& json_text);
SystemParams load_config_file(const std::string& path);

// Serialization of resolved parameters (SI/angular units) for manifests.
std::string params_to_json(const SystemParams& p, const DerivedConstants& d);

// The reference experimental parameter set with the given knobs; theta = pi/4,
// effective detuning delta_over_omega_m * omega_m.
SystemParams reference_params(double gain_over_kappa, double power_mw,
                          double delta_over_omega_m = 1.0);

} // namespace opamech

#endif // OPAMECH_CONFIG_HPP
