#ifndef OPAMECH_CONSTANTS_HPP
#define OPAMECH_CONSTANTS_HPP

namespace opamech {

// Fixed physical constants. Pinned values keep every output reproducible
// bit-for-bit; do not read them from the environment.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;     // reduced Planck constant, J s
    double k_b = 1.380649e-23;         // Boltzmann constant, J/K
    double c_light = 2.99792458e8;     // speed of light in vacuum, m/s
};

inline constexpr PhysicalConstants kConstants{};

} // namespace opamech

#endif // OPAMECH_CONSTANTS_HPP
