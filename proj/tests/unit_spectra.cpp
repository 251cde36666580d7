#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "opamech/config.hpp"
#include "opamech/spectra.hpp"
#include "support/test_helpers.hpp"

using namespace opamech;
using Complex = std::complex<double>;

namespace {

constexpr PhysicalConstants kC{};

double brownian_closed_form(const SystemParams& p, const DerivedConstants& d, double w) {
    const double wm = p.omega_m, gm = d.gamma_m;
    const double coth = 1.0 / std::tanh(kC.hbar * w / (2.0 * kC.k_b * p.temperature));
    const double denom = (w * w - wm * wm) * (w * w - wm * wm) + gm * gm * w * w;
    return 2.0 * gm * wm * w * coth / denom;
}

std::vector<double> lorentzian(const std::vector<double>& grid, double center, double hwhm,
                               double amp = 1.0) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        v[i] = amp / ((grid[i] - center) * (grid[i] - center) + hwhm * hwhm);
    return v;
}

} // namespace

TEST_CASE("chi=0 reduction: S_Q equals the Brownian closed form to 1e-10") {
    SystemParams p = reference_params(0.9, 6.9);
    DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    d.chi = 0.0;
    const auto grid = frequency_grid(p.omega_m, 0.5, 1.5, 2001);
    const auto res = sq_spectrum(ss, d, p, grid, NoiseModel::exact(p.temperature));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double expect = brownian_closed_form(p, d, grid[i]);
        CHECK(std::abs(res.values[i] - expect) < 1e-10 * expect);
    }
}

TEST_CASE("chi=0 Brownian peak sits at omega_m with width gamma_m") {
    SystemParams p = reference_params(0.0, 6.9);
    DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    d.chi = 0.0;
    // +-20 gamma_m around the resonance, step = gamma_m / 100
    const double span = 20.0 * d.gamma_m / p.omega_m;
    const auto grid = frequency_grid(p.omega_m, 1.0 - span, 1.0 + span, 4001);
    const auto res = sq_spectrum(ss, d, p, grid, NoiseModel::exact(p.temperature));
    REQUIRE(res.peaks.size() == 1);
    CHECK(std::abs(res.peaks[0].position - p.omega_m) <= grid[1] - grid[0]);
    CHECK(res.peaks[0].fwhm == doctest::Approx(d.gamma_m).epsilon(0.02));
}

TEST_CASE("high-temperature weight is within 1e-3 of exact coth at 300 mK") {
    const SystemParams p = reference_params(1.3, 6.9);
    const DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    const auto grid = frequency_grid(p.omega_m, 0.5, 1.5, 501);
    const auto exact = sq_spectrum(ss, d, p, grid, NoiseModel::exact(p.temperature));
    const auto hight = sq_spectrum(ss, d, p, grid, NoiseModel::high_temperature(p.temperature));
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(hight.values[i] - exact.values[i]) < 1e-3 * exact.values[i]);
}

TEST_CASE("high-temperature substitution is exact, not approximate") {
    const NoiseModel n = NoiseModel::high_temperature(0.3);
    const double two_kbt_over_hbar = 2.0 * kC.k_b * 0.3 / kC.hbar;
    CHECK(n.position_weight(1e6) == two_kbt_over_hbar);
    CHECK(n.output_weight(1e6) == two_kbt_over_hbar - 1e6);
    CHECK(n.output_weight(-1e6) == two_kbt_over_hbar + 1e6);
}

TEST_CASE("exact-coth weight: removable singularity and T=0 limits") {
    const NoiseModel warm = NoiseModel::exact(0.3);
    CHECK(warm.position_weight(0.0) == 2.0 * kC.k_b * 0.3 / kC.hbar);
    const NoiseModel cold = NoiseModel::exact(0.0);
    CHECK(cold.position_weight(5e6) == 5e6);     // coth -> 1
    CHECK(cold.position_weight(-5e6) == 5e6);    // coth -> -1
    CHECK(cold.output_weight(5e6) == 0.0);       // vacuum: no output noise at w > 0
    CHECK(cold.output_weight(-5e6) == 1e7);
}

TEST_CASE("fig4 peak counts: 1 at G=0, 2 at 1.3 and 1.45 kappa") {
    for (auto [g, expected] : {std::pair{0.0, 1}, {1.3, 2}, {1.45, 2}}) {
        const SystemParams p = reference_params(g, 6.9);
        const DerivedConstants d = derive_constants(p);
        const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
        const auto grid = frequency_grid(p.omega_m, 0.2, 1.5, 2001);
        const auto res = sq_spectrum(ss, d, p, grid, NoiseModel::automatic(p));
        CHECK(static_cast<int>(res.peaks.size()) == expected);
    }
}

TEST_CASE("output coefficients: chi=0 and G=0 identities") {
    SystemParams p = reference_params(0.0, 6.9);
    DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    d.chi = 0.0;
    for (double w_over : {0.3, 0.9, 1.0, 1.4}) {
        const double w = w_over * p.omega_m;
        const OutputCoefficients oc = output_coefficients(ss, d, p, w);
        CHECK(std::abs(oc.v) == 0.0);                    // V carries the overall chi
        CHECK(std::abs(oc.f) == 0.0);                    // F needs G or chi^2
        CHECK(std::abs(oc.e) == doctest::Approx(1.0).epsilon(1e-12));  // lossless reflection
    }
}

TEST_CASE("V vanishes at chi=0 even with the OPA on") {
    SystemParams p = reference_params(1.3, 6.9);
    DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    d.chi = 0.0;
    const OutputCoefficients oc = output_coefficients(ss, d, p, 0.8 * p.omega_m);
    CHECK(std::abs(oc.v) == 0.0);
    CHECK(std::abs(oc.f) > 0.0);  // the OPA scatters vacuum even without the mirror
}

TEST_CASE("vacuum in, vacuum out: S_cout = 0 at chi=0, G=0, T=0") {
    SystemParams p = reference_params(0.0, 6.9);
    p.temperature = 0.0;
    DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    d.chi = 0.0;
    const auto grid = frequency_grid(p.omega_m, 0.5, 1.5, 101);
    const SpectrumKind kinds[] = {SpectrumKind::Scout};
    const auto res = output_spectra(ss, d, p, grid, NoiseModel::exact(0.0), kinds);
    for (double v : res[0].values) CHECK(v == 0.0);
}

TEST_CASE("output spectra doublet pattern and S_cout separation growth") {
    const auto grid = frequency_grid(reference_params(0, 6.9).omega_m, 0.2, 1.5, 2001);
    const SpectrumKind all[] = {SpectrumKind::Scout, SpectrumKind::Sxout, SpectrumKind::Syout};

    std::vector<double> scout_separation;
    for (double g : {0.0, 1.3, 1.45}) {
        const SystemParams p = reference_params(g, 6.9);
        const DerivedConstants d = derive_constants(p);
        const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
        const auto res = output_spectra(ss, d, p, grid, NoiseModel::automatic(p), all);
        for (const auto& r : res) {
            if (g == 0.0) CHECK(r.peaks.size() == 1);
            else CHECK(r.peaks.size() == 2);
        }
        const auto& scout_peaks = res[0].peaks;
        scout_separation.push_back(
            scout_peaks.size() >= 2 ? scout_peaks.back().position - scout_peaks.front().position
                                    : 0.0);
    }
    CHECK(scout_separation[2] > scout_separation[1]);  // larger gain, larger separation
}

TEST_CASE("S_yout doublet mirrors the mechanical spectrum shape") {
    const SystemParams p = reference_params(1.3, 6.9);
    const DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    const auto grid = frequency_grid(p.omega_m, 0.2, 1.5, 2001);
    const auto sq = sq_spectrum(ss, d, p, grid, NoiseModel::automatic(p));
    const SpectrumKind one[] = {SpectrumKind::Syout};
    const auto sy = output_spectra(ss, d, p, grid, NoiseModel::automatic(p), one);
    REQUIRE(sq.peaks.size() == 2);
    REQUIRE(sy[0].peaks.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(std::abs(sy[0].peaks[i].position - sq.peaks[i].position) < 0.03 * p.omega_m);
}

TEST_CASE("nonnegativity and reality across random stable points") {
    std::mt19937_64 rng(307);
    const SpectrumKind all[] = {SpectrumKind::Scout, SpectrumKind::Sxout, SpectrumKind::Syout};
    for (int trial = 0; trial < 25; ++trial) {
        const SystemParams p = test::random_stable(rng);
        const DerivedConstants d = derive_constants(p);
        const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
        auto grid = frequency_grid(p.omega_m, -0.5, 1.5, 301);  // includes omega <= 0
        const auto sq = sq_spectrum(ss, d, p, grid, NoiseModel::exact(p.temperature));
        const auto outs = output_spectra(ss, d, p, grid, NoiseModel::exact(p.temperature), all);
        const double sq_max = *std::max_element(sq.values.begin(), sq.values.end());
        for (double v : sq.values) CHECK(v >= -1e-12 * sq_max);
        for (const auto& r : outs) {
            const double m = *std::max_element(r.values.begin(), r.values.end());
            for (double v : r.values) CHECK(v >= -1e-12 * std::max(m, 1e-300));
        }
    }
}

TEST_CASE("unstable operating points are refused") {
    const SystemParams p = reference_params(1.7, 6.9);
    const DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    const auto grid = frequency_grid(p.omega_m, 0.5, 1.5, 101);
    CHECK_THROWS_AS(sq_spectrum(ss, d, p, grid, NoiseModel::automatic(p)), std::domain_error);
    const SpectrumKind one[] = {SpectrumKind::Syout};
    CHECK_THROWS_AS(output_spectra(ss, d, p, grid, NoiseModel::automatic(p), one),
                    std::domain_error);
}

TEST_CASE("grid validation") {
    const SystemParams p = reference_params(0.0, 6.9);
    const DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    std::vector<double> empty;
    CHECK_THROWS_AS(sq_spectrum(ss, d, p, empty, NoiseModel::automatic(p)),
                    std::invalid_argument);
    std::vector<double> unsorted = {1.0, 0.5, 2.0};
    CHECK_THROWS_AS(sq_spectrum(ss, d, p, unsorted, NoiseModel::automatic(p)),
                    std::invalid_argument);
}

TEST_CASE("peak finder on analytic shapes") {
    SUBCASE("single Lorentzian: position and FWHM") {
        std::vector<double> grid(4001);
        const double w0 = 10.0, hw = 0.5;
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = w0 - 5.0 + 10.0 * static_cast<double>(i) / 4000.0;  // step = hw/200
        const auto vals = lorentzian(grid, w0, hw);
        const auto peaks = find_peaks(grid, vals);
        REQUIRE(peaks.size() == 1);
        CHECK(peaks[0].position == doctest::Approx(w0).epsilon(1e-6));
        CHECK(peaks[0].fwhm == doctest::Approx(2.0 * hw).epsilon(0.02));
    }
    SUBCASE("monotone data has no peaks") {
        std::vector<double> grid = {0, 1, 2, 3, 4, 5}, vals = {0, 1, 2, 3, 4, 5};
        CHECK(find_peaks(grid, vals).empty());
    }
    SUBCASE("two well-separated Lorentzians") {
        std::vector<double> grid(8001);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = static_cast<double>(i) * 30.0 / 8000.0;
        auto vals = lorentzian(grid, 10.0, 0.5);
        const auto second = lorentzian(grid, 20.0, 0.5, 0.8);
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += second[i];
        const auto peaks = find_peaks(grid, vals);
        REQUIRE(peaks.size() == 2);
        CHECK(peaks[0].position == doctest::Approx(10.0).epsilon(0.02));
        CHECK(peaks[1].position == doctest::Approx(20.0).epsilon(0.02));
    }
    SUBCASE("a secondary maximum below the threshold is filtered") {
        std::vector<double> grid(2001);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = static_cast<double>(i) * 30.0 / 2000.0;
        auto vals = lorentzian(grid, 10.0, 0.5);
        const auto faint = lorentzian(grid, 22.0, 0.5, 0.03);  // 3% of the main peak
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += faint[i];
        CHECK(find_peaks(grid, vals).size() == 1);
        CHECK(find_peaks(grid, vals, 0.005).size() == 2);  // threshold is configurable
    }
    SUBCASE("needs at least five points") {
        std::vector<double> g = {0, 1, 2, 3}, v = {0, 1, 0, 0};
        CHECK_THROWS_AS(find_peaks(g, v), std::invalid_argument);
    }
}

TEST_CASE("monotone splitting in gain and in power") {
    SUBCASE("separation non-decreasing in G at Delta=omega_m, 6.9 mW") {
        double prev = -1.0;
        for (double g : {0.0, 0.5, 1.0, 1.3, 1.45}) {
            const SystemParams p = reference_params(g, 6.9);
            const DerivedConstants d = derive_constants(p);
            const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
            const auto grid = frequency_grid(p.omega_m, 0.2, 1.5, 2001);
            const auto res = sq_spectrum(ss, d, p, grid, NoiseModel::automatic(p));
            const double sep = res.peaks.size() >= 2
                                   ? res.peaks.back().position - res.peaks.front().position
                                   : 0.0;
            CHECK(sep >= prev);
            prev = sep;
        }
    }
    SUBCASE("separation non-decreasing in power at G=1.3 kappa, degenerate detuning") {
        double prev = -1.0;
        for (double mw : {0.6, 6.9, 10.7}) {
            SystemParams p = reference_params(1.3, mw);
            p.detuning.value = std::sqrt(p.omega_m * p.omega_m +
                                         4.0 * p.parametric_gain * p.parametric_gain);
            const DerivedConstants d = derive_constants(p);
            const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
            const auto grid = frequency_grid(p.omega_m, 0.2, 1.5, 2001);
            const auto res = sq_spectrum(ss, d, p, grid, NoiseModel::automatic(p));
            const double sep = res.peaks.size() >= 2
                                   ? res.peaks.back().position - res.peaks.front().position
                                   : 0.0;
            CHECK(sep >= prev);
            prev = sep;
        }
    }
}

TEST_CASE("radiation-pressure and thermal brackets are real") {
    std::mt19937_64 rng(311);
    for (int trial = 0; trial < 50; ++trial) {
        const SystemParams p = test::random_stable(rng);
        const DerivedConstants d = derive_constants(p);
        const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
        const Complex phase{std::cos(p.parametric_phase), std::sin(p.parametric_phase)};
        const Complex cs2 = ss.c_s * ss.c_s;
        for (double w_over : {0.5, 1.0, 1.5}) {
            const double w = w_over * p.omega_m;
            const Complex rp =
                (p.kappa * p.kappa + w * w + ss.delta * ss.delta +
                 4.0 * p.parametric_gain * p.parametric_gain) * ss.photon_number +
                2.0 * p.parametric_gain * phase * std::conj(cs2) * Complex{p.kappa, -ss.delta} +
                2.0 * p.parametric_gain * std::conj(phase) * cs2 * Complex{p.kappa, ss.delta};
            if (std::abs(rp) == 0.0) continue;
            CHECK(std::abs(rp.imag()) < 1e-12 * std::abs(rp));
        }
    }
}
