#ifndef OPAMECH_TOOLS_PRESETS_HPP
#define OPAMECH_TOOLS_PRESETS_HPP

#include <string>
#include <vector>

#include "runner.hpp"

namespace opamech::tools {

// Turnkey reproductions of the published figures. Each preset writes CSVs,
// an SVG chart, and a manifest into out_dir and returns the file list.
//   fig2/fig3 : positive-branch roots of d(omega) vs G/kappa at
//               Delta = omega_m for 6.9 and 10.7 mW (real / imaginary parts).
//   fig4..7   : S_Q, S_cout, S_xout, S_yout vs omega/omega_m for
//               G/kappa in {0, 1.3, 1.45} at Delta = omega_m, 6.9 mW.
//   fig8      : S_Q for power in {0.6, 6.9, 10.7} mW at G = 1.3 kappa,
//               Delta = sqrt(omega_m^2 + 4 G^2).
//   fig9      : S_Q for the same powers at G = 0, Delta = omega_m.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);

struct PresetOptions {
    int grid_points = 4001;
    int workers = 1;
    const NoiseModel* noise_override = nullptr;
};

std::vector<std::string> run_preset(const std::string& name, const std::string& out_dir,
                                    const PresetOptions& opt = {});

// Spectrum presets cover [0.2, 1.5] omega_m: the lower normal-mode peak sits
// near 0.42 omega_m at G = 1.45 kappa, outside the default [0.5, 1.5] span.
inline constexpr double kPresetGridLo = 0.2;
inline constexpr double kPresetGridHi = 1.5;

} // namespace opamech::tools

#endif
