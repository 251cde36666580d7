#include "opamech/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace opamech {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("config error: missing key " + key);
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError("config error: " + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("config error: " + key + " must be finite");
    return x;
}

double require_positive(const json& j, const std::string& key) {
    const double x = require_number(j, key);
    if (!(x > 0.0)) throw ConfigError("config error: " + key + " must be > 0");
    return x;
}

double require_nonnegative(const json& j, const std::string& key) {
    const double x = require_number(j, key);
    if (x < 0.0) throw ConfigError("config error: " + key + " must be >= 0");
    return x;
}

} // namespace

SystemParams parse_config_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config error: top level must be an object");

    static const std::set<std::string> known = {
        "lambda_nm", "cavity_length_mm", "mass_ng", "kappa_hz", "omega_m_hz",
        "quality_factor", "temperature_mk", "parametric_gain_over_kappa",
        "parametric_phase_rad", "laser_power_mw", "detuning_mode", "detuning_over_omega_m"};
    for (const auto& item : j.items())
        if (!known.contains(item.key()))
            throw ConfigError("config error: unknown key " + item.key());

    constexpr double two_pi = 2.0 * std::numbers::pi;
    SystemParams p;
    p.lambda_laser = require_positive(j, "lambda_nm") * 1e-9;
    p.cavity_length = require_positive(j, "cavity_length_mm") * 1e-3;
    p.mass = require_positive(j, "mass_ng") * 1e-12;
    p.kappa = require_positive(j, "kappa_hz") * two_pi;
    p.omega_m = require_positive(j, "omega_m_hz") * two_pi;
    p.quality_factor = require_positive(j, "quality_factor");
    p.temperature = require_nonnegative(j, "temperature_mk") * 1e-3;
    p.parametric_gain = require_nonnegative(j, "parametric_gain_over_kappa") * p.kappa;
    p.parametric_phase = require_number(j, "parametric_phase_rad");
    p.laser_power = require_nonnegative(j, "laser_power_mw") * 1e-3;

    if (!j.contains("detuning_mode"))
        throw ConfigError("config error: missing key detuning_mode");
    const json& mode = j.at("detuning_mode");
    if (!mode.is_string())
        throw ConfigError("config error: detuning_mode must be a string");
    const std::string mode_s = mode.get<std::string>();
    if (mode_s == "effective") p.detuning.mode = DetuningMode::Effective;
    else if (mode_s == "bare") p.detuning.mode = DetuningMode::Bare;
    else throw ConfigError("config error: detuning_mode must be \"effective\" or \"bare\"");
    p.detuning.value = require_number(j, "detuning_over_omega_m") * p.omega_m;
    return p;
}

SystemParams load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config error: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::string params_to_json(const SystemParams& p, const DerivedConstants& d) {
    json j;
    j["lambda_laser_m"] = p.lambda_laser;
    j["cavity_length_m"] = p.cavity_length;
    j["mass_kg"] = p.mass;
    j["kappa_rad_s"] = p.kappa;
    j["omega_m_rad_s"] = p.omega_m;
    j["quality_factor"] = p.quality_factor;
    j["temperature_k"] = p.temperature;
    j["parametric_gain_rad_s"] = p.parametric_gain;
    j["parametric_phase_rad"] = p.parametric_phase;
    j["laser_power_w"] = p.laser_power;
    j["detuning_mode"] = p.detuning.mode == DetuningMode::Effective ? "effective" : "bare";
    j["detuning_rad_s"] = p.detuning.value;
    j["derived"] = {
        {"omega_laser_rad_s", d.omega_laser}, {"omega_cavity_rad_s", d.omega_cavity},
        {"chi", d.chi},                       {"epsilon", d.epsilon},
        {"gamma_m_rad_s", d.gamma_m},
    };
    return j.dump(2);
}

SystemParams reference_params(double gain_over_kappa, double power_mw, double delta_over_omega_m) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    SystemParams p;
    p.lambda_laser = 1064e-9;
    p.cavity_length = 25e-3;
    p.mass = 145e-12;
    p.kappa = two_pi * 215e3;
    p.omega_m = two_pi * 947e3;
    p.quality_factor = 6700.0;
    p.temperature = 0.3;
    p.parametric_gain = gain_over_kappa * p.kappa;
    p.parametric_phase = std::numbers::pi / 4.0;
    p.laser_power = power_mw * 1e-3;
    p.detuning = {DetuningMode::Effective, delta_over_omega_m * p.omega_m};
    return p;
}

} // namespace opamech
