#include <doctest.h>

#include "contactforge/distinguished.hpp"

using namespace cf;

TEST_CASE("shift parameter selection, n = 2") {
    const auto p = choose_shift_params(2);
    CHECK(p.nu == doctest::Approx(0.01));
    CHECK(p.window_lo == doctest::Approx(0.84));
    CHECK(p.pi_nu_c_sq == doctest::Approx(0.92));
    CHECK(p.c > 5.40);
    CHECK(p.c < 5.42);
    CHECK(p.lambda_sq == doctest::Approx(0.96));
    // The chosen value sits strictly inside the window.
    CHECK(p.pi_nu_c_sq > p.window_lo);
    CHECK(p.pi_nu_c_sq < p.window_hi);
}

TEST_CASE("extension at s = 0 is the plain homogeneous extension") {
    const auto p = choose_shift_params(2);
    DistinguishedMap a(p);
    CVec z(2);
    z[0] = Cplx(0.3, -0.8);
    z[1] = Cplx(0.5, 0.4);
    const double A =
        p.nu * kPi * std::norm(z[0]) + kPi * std::norm(z[1]);
    CHECK(a.extension_value(z, 0.0) ==
          doctest::Approx(-z[0].imag() * std::sqrt(A)).epsilon(1e-12));
}

TEST_CASE("flow diagnostics: conserved quantities, convergence, inverses") {
    DistinguishedMap a(choose_shift_params(2), OdeConfig{256});
    SamplingGrid g;
    g.sphere_points = 8;
    const auto d = a.diagnose(g, 8);
    CHECK(d.first_integral_drift < 1e-5);   // varrho is a first integral
    CHECK(d.richardson_err < 1e-5);         // step-halving agreement
    CHECK(d.equivariance_err < 1e-9);       // a(2z) = 2 a(z)
    CHECK(d.roundtrip_err < 1e-7);
}

TEST_CASE("flow cache round trip") {
    DistinguishedMap a(choose_shift_params(2), OdeConfig{128});
    SamplingGrid g;
    g.sphere_points = 4;
    const auto cache = flow_cache_to_json(a, g, 4);
    CHECK(verify_flow_cache(a, cache, 1e-9));
    auto broken = cache;
    broken["trajectories"][0]["image"][0] =
        broken["trajectories"][0]["image"][0].get<double>() + 1e-3;
    CHECK_FALSE(verify_flow_cache(a, broken, 1e-9));
    // A cache built with different parameters is rejected.
    auto p3 = choose_shift_params(3);
    DistinguishedMap b(p3, OdeConfig{128});
    CHECK_FALSE(verify_flow_cache(b, cache, 1e-9));
}

TEST_CASE("main loop verification on a small grid") {
    SamplingGrid g;
    g.n = 2;
    g.shells = 1;
    g.r_min = g.r_max = 1.0;
    g.sphere_points = 16;
    g.time_samples = 6;
    g.s_samples = 4;
    const auto loop = build_main_loop(2, OdeConfig{512});
    const auto checks = verify_main_loop(loop, g);
    CHECK(checks.phi_lower.pass);   // Phi > (2n - 3 - 1e-3) rho
    CHECK(checks.g_positive.pass);  // G^{(s)} >= 0
    CHECK(checks.h_positive.pass);  // H^{(s)} >= 0
    CHECK(checks.wedge.pass);
    CHECK(checks.closure.pass);
    CHECK(checks.mu.mu_hat >= 0.8);
    CHECK(checks.mu.mu_hat <= 1.05);
    CHECK(checks.pass);
}

TEST_CASE("closed-form Phi matches the numeric generator of the flow") {
    const auto loop = build_main_loop(2, OdeConfig{512});
    const auto Hnum = extract_hamiltonian(loop.phi);
    CVec z(2);
    z[0] = Cplx(0.6, 0.2);
    z[1] = Cplx(-0.3, 0.7);
    for (double t : {0.2, 0.65}) {
        const double closed = loop.Phi(z, t, 1.0);
        const double numeric = Hnum(z, t, 1.0);
        CHECK(closed == doctest::Approx(numeric).epsilon(2e-3));
    }
}
