#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "opamech/config.hpp"
#include "opamech/steady_state.hpp"
#include "support/test_helpers.hpp"

using namespace opamech;

namespace {

// Relative closure of the field balance c_s (k^2+D^2-4G^2) = (k - iD + 2G e^{i theta}) eps.
double field_residual(const SystemParams& p, const DerivedConstants& d, const SteadyState& ss) {
    const double denom =
        p.kappa * p.kappa + ss.delta * ss.delta - 4.0 * p.parametric_gain * p.parametric_gain;
    const std::complex<double> rhs =
        (std::complex<double>{p.kappa, -ss.delta} +
         2.0 * p.parametric_gain *
             std::complex<double>{std::cos(p.parametric_phase), std::sin(p.parametric_phase)}) *
        d.epsilon;
    const std::complex<double> lhs = ss.c_s * denom;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

// Closure of the self-consistency Delta = Delta_0 - 2 omega_m chi^2 |c_s|^2.
double detuning_residual(const SystemParams& p, const DerivedConstants& d, double delta0,
                         const SteadyState& ss) {
    const double shift = 2.0 * p.omega_m * d.chi * d.chi * ss.photon_number;
    const double scale = std::max({std::abs(delta0), std::abs(ss.delta), p.omega_m});
    return std::abs(delta0 - ss.delta - shift) / scale;
}

} // namespace

TEST_CASE("intracavity photon numbers reproduce the reported values") {
    struct Row { double g, p, photons; };
    // frozen from 50-digit evaluation of the closed form
    const Row rows[] = {{0.0, 6.9, 2.682101585e9},
                        {1.3, 6.9, 4.305689330e9},
                        {1.45, 6.9, 5.650389897e9},
                        {1.3, 10.7, 6.676938526e9}};
    for (const Row& row : rows) {
        const SystemParams p = reference_params(row.g, row.p);
        const DerivedConstants d = derive_constants(p);
        const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
        CHECK(ss.photon_number == doctest::Approx(row.photons).epsilon(1e-8));
        CHECK(ss.p_s == 0.0);
        CHECK(ss.q_s == doctest::Approx(2.0 * d.chi * ss.photon_number).epsilon(1e-15));
        CHECK(field_residual(p, d, ss) < 1e-10);
    }
}

TEST_CASE("undriven cavity has an empty steady state") {
    const SystemParams p = reference_params(1.3, 0.0);
    const DerivedConstants d = derive_constants(p);
    const SteadyState ss = steady_state_at_delta(p, d, p.detuning.value);
    CHECK(ss.c_s == std::complex<double>{0.0, 0.0});
    CHECK(ss.q_s == 0.0);
    CHECK(ss.photon_number == 0.0);
}

TEST_CASE("parametric-oscillation divergence is refused") {
    SystemParams p = reference_params(0.0, 6.9);
    // choose G with 4G^2 = kappa^2 + Delta^2 exactly
    const double delta = p.detuning.value;
    p.parametric_gain = 0.5 * std::sqrt(p.kappa * p.kappa + delta * delta);
    const DerivedConstants d = derive_constants(p);
    CHECK_THROWS_AS(steady_state_at_delta(p, d, delta), std::domain_error);
}

TEST_CASE("chi=0 collapses the quintic to the bare detuning") {
    SystemParams p = reference_params(0.8, 6.9);
    p.detuning.mode = DetuningMode::Bare;
    const DerivedConstants d = derive_constants(p);
    DerivedConstants d0 = d;
    d0.chi = 0.0;
    const auto branches = solve_branches(p, d0, 1.37 * p.omega_m);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].delta == doctest::Approx(1.37 * p.omega_m).epsilon(1e-14));
    CHECK(branches[0].branch_index == 0);

    // consistency with the direct closed form as chi -> 0
    const SteadyState direct = steady_state_at_delta(p, d0, 1.37 * p.omega_m);
    CHECK(std::abs(branches[0].c_s - direct.c_s) <=
          1e-8 * std::max(1.0, std::abs(direct.c_s)));
}

TEST_CASE("single branch at low power near the mechanical sideband") {
    const SystemParams base = reference_params(0.0, 0.6);
    SystemParams p = base;
    p.detuning.mode = DetuningMode::Bare;
    const DerivedConstants d = derive_constants(p);
    const double delta0 = 1.1 * p.omega_m;
    const auto branches = solve_branches(p, d, delta0);
    const auto oracle =
        test::dense_scan_real_roots(branch_quintic_coefficients(p, d, delta0), 400000);
    CHECK(branches.size() == oracle.size());
    CHECK(branches.size() == 1);
    for (const auto& b : branches) {
        CHECK(field_residual(p, d, b) < 1e-10);
        CHECK(detuning_residual(p, d, delta0, b) < 1e-10);
    }
}

TEST_CASE("a three-branch window exists at 10.7 mW without the OPA") {
    SystemParams p = reference_params(0.0, 10.7);
    p.detuning.mode = DetuningMode::Bare;
    const DerivedConstants d = derive_constants(p);
    bool found_window = false;
    for (double delta0 = 0.2 * p.omega_m; delta0 <= 3.0 * p.omega_m; delta0 += 0.05 * p.omega_m) {
        const auto branches = solve_branches(p, d, delta0);
        const auto oracle =
            test::dense_scan_real_roots(branch_quintic_coefficients(p, d, delta0), 400000);
        REQUIRE(branches.size() == oracle.size());
        for (std::size_t i = 0; i < branches.size(); ++i) {
            CHECK(std::abs(branches[i].delta - oracle[i]) <
                  1e-6 * std::max({p.kappa, p.omega_m, std::abs(oracle[i])}));
            CHECK(field_residual(p, d, branches[i]) < 1e-10);
            CHECK(detuning_residual(p, d, delta0, branches[i]) < 1e-10);
            CHECK(branches[i].branch_index == static_cast<int>(i));
        }
        if (branches.size() == 3) found_window = true;
    }
    CHECK(found_window);
}

TEST_CASE("small-chi branches converge to the direct closed form") {
    // 12 orders of magnitude heavier mirror: chi tiny but nonzero, so the
    // quintic path is exercised and must land on the chi -> 0 limit.
    const double delta0_over_wm = 1.2;

    SUBCASE("2G < kappa: the quintic collapses to a single branch") {
        SystemParams p = reference_params(0.3, 6.9);
        p.mass = 0.145;
        p.detuning.mode = DetuningMode::Bare;
        const DerivedConstants d = derive_constants(p);
        const double delta0 = delta0_over_wm * p.omega_m;
        const auto branches = solve_branches(p, d, delta0);
        REQUIRE(branches.size() == 1);
        const SteadyState direct = steady_state_at_delta(p, d, delta0);
        CHECK(std::abs(branches[0].c_s - direct.c_s) < 1e-8 * std::abs(direct.c_s));
    }
    SUBCASE("2G > kappa: extreme branches ring the divergence circle") {
        // kappa^2 + Delta^2 - 4G^2 = 0 has real solutions, so four huge
        // photon-number branches survive any nonzero chi; the branch near
        // Delta_0 still converges to the direct closed form.
        SystemParams p = reference_params(0.6, 6.9);
        p.mass = 0.145;
        p.detuning.mode = DetuningMode::Bare;
        const DerivedConstants d = derive_constants(p);
        const double delta0 = delta0_over_wm * p.omega_m;
        const auto branches = solve_branches(p, d, delta0);
        REQUIRE(branches.size() == 5);
        const SteadyState direct = steady_state_at_delta(p, d, delta0);
        const auto nearest = std::min_element(
            branches.begin(), branches.end(), [&](const SteadyState& a, const SteadyState& b) {
                return std::abs(a.delta - delta0) < std::abs(b.delta - delta0);
            });
        CHECK(std::abs(nearest->c_s - direct.c_s) < 1e-8 * std::abs(direct.c_s));
    }
}

TEST_CASE("root count is odd for generic bare detunings") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 40; ++trial) {
        SystemParams p = test::random_admissible(rng);
        p.detuning.mode = DetuningMode::Bare;
        const DerivedConstants d = derive_constants(p);
        const auto branches = solve_branches(p, d, p.detuning.value);
        CHECK(branches.size() % 2 == 1);
        CHECK(branches.size() <= 5);
        for (const auto& b : branches) {
            CHECK(field_residual(p, d, b) < 1e-10);
            CHECK(detuning_residual(p, d, p.detuning.value, b) < 1e-10);
        }
    }
}

TEST_CASE("operating_point dispatches on the detuning mode") {
    SystemParams p = reference_params(1.3, 6.9);
    const DerivedConstants d = derive_constants(p);
    const SteadyState eff = operating_point(p, d);
    CHECK(eff.delta == p.detuning.value);

    p.detuning.mode = DetuningMode::Bare;
    p.detuning.value = 2.0 * p.omega_m;
    const DerivedConstants db = derive_constants(p);
    const SteadyState bare = operating_point(p, db, 0);
    CHECK(detuning_residual(p, db, p.detuning.value, bare) < 1e-10);
    CHECK_THROWS_AS(operating_point(p, db, 99), std::domain_error);
}
