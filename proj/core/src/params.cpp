#include "opamech/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opamech {

DerivedConstants derive_constants(const SystemParams& p, const PhysicalConstants& consts) {
    auto require_positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(name) + " must be strictly positive");
    };
    require_positive(p.lambda_laser, "lambda_laser");
    require_positive(p.cavity_length, "cavity_length");
    require_positive(p.mass, "mass");
    require_positive(p.omega_m, "omega_m");
    require_positive(p.quality_factor, "quality_factor");
    require_positive(p.kappa, "kappa");
    if (p.laser_power < 0.0 || !std::isfinite(p.laser_power))
        throw std::invalid_argument("laser_power must be >= 0");
    if (p.parametric_gain < 0.0 || !std::isfinite(p.parametric_gain))
        throw std::invalid_argument("parametric_gain must be >= 0");
    if (p.temperature < 0.0 || !std::isfinite(p.temperature))
        throw std::invalid_argument("temperature must be >= 0");

    DerivedConstants d;
    d.omega_laser = 2.0 * std::numbers::pi * consts.c_light / p.lambda_laser;
    d.omega_cavity = d.omega_laser;
    if (p.detuning.mode == DetuningMode::Bare) d.omega_cavity += p.detuning.value;
    d.chi = (1.0 / p.omega_m) * (d.omega_cavity / p.cavity_length) *
            std::sqrt(consts.hbar / (2.0 * p.mass * p.omega_m));
    d.epsilon = std::sqrt(2.0 * p.kappa * p.laser_power / (consts.hbar * d.omega_laser));
    d.gamma_m = p.omega_m / p.quality_factor;
    return d;
}

std::vector<Diagnostic> validate_params(const SystemParams& p, const PhysicalConstants& consts) {
    std::vector<Diagnostic> out;
    const double gamma_m = p.quality_factor > 0.0 ? p.omega_m / p.quality_factor : 0.0;
    const double delta = p.detuning.value;

    if (p.omega_m <= p.kappa)
        out.push_back({"resolved_sideband",
                       "omega_m <= kappa: outside the resolved-sideband regime"});
    if (delta <= 2.0 * p.parametric_gain)
        out.push_back({"detuning_vs_gain",
                       "Delta <= 2G: cavity normal-mode frequency sqrt(Delta^2-4G^2) is not real"});
    if (p.kappa <= gamma_m)
        out.push_back({"kappa_vs_gamma",
                       "kappa <= gamma_m: cavity decay not large against mechanical damping"});
    if (p.cavity_length > 0.0) {
        const double free_spectral_range = consts.c_light / (2.0 * p.cavity_length);
        if (p.omega_m > 0.1 * free_spectral_range)
            out.push_back({"adiabatic_limit",
                           "omega_m is not small against c/(2L); single-mode description questionable"});
    }
    return out;
}

} // namespace opamech
