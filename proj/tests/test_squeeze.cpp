#include <doctest.h>

#include "contactforge/squeeze.hpp"

using namespace cf;

TEST_CASE("squeezing verdict: all four branches") {
    using K = SqueezeVerdict::Kind;
    auto v = squeezing_verdict(2, 2.5, 1.7, SqueezeTarget::cylinder);
    CHECK(v.kind == K::non_squeezable);
    CHECK(v.branch == "integer-obstruction");
    CHECK(v.m == 2);

    v = squeezing_verdict(2, 0.8, 0.5, SqueezeTarget::ball);
    CHECK(v.kind == K::squeezable);
    CHECK(v.branch == "small-radius-squeeze");

    v = squeezing_verdict(2, 1.6, 1.4, SqueezeTarget::cylinder, 2.0);
    CHECK(v.kind == K::restricted);
    CHECK(v.branch == "restricted-window");
    CHECK(v.m == 3);
    CHECK(v.k == 2);

    v = squeezing_verdict(2, 1.5, 1.5, SqueezeTarget::cylinder);
    CHECK(v.kind == K::open);

    // Boundary: R2 <= m <= R1 is non-strict.
    v = squeezing_verdict(2, 2.0, 2.0, SqueezeTarget::cylinder);
    CHECK(v.kind == K::non_squeezable);

    CHECK_THROWS(squeezing_verdict(1, 0.5, 0.5, SqueezeTarget::ball));
    CHECK_THROWS(squeezing_verdict(2, -1.0, 0.5, SqueezeTarget::ball));
}

TEST_CASE("iteration plan: exact rationals, 0.9 -> below 0.1 in 9 steps") {
    const auto plan = iteration_plan(0.9, 0.1, 1.0);
    CHECK(plan.N == 9);
    REQUIRE(plan.trajectory.size() == 10);
    CHECK(plan.trajectory.front() == doctest::Approx(0.9));
    CHECK(plan.trajectory.back() < 0.1);
    CHECK(plan.trajectory[1] == doctest::Approx(0.9 / 1.9));
}

TEST_CASE("capacity bracket bookkeeping") {
    const auto b = capacity_bracket(0.5, 0.5);
    CHECK(b.point_estimate);
    const auto c = capacity_bracket(0.4, 0.9);
    CHECK_FALSE(c.point_estimate);
    CHECK(c.negligibility_rescale == doctest::Approx(0.81));
    CHECK_THROWS(capacity_bracket(0.9, 0.4));
}

TEST_CASE("reparameterized homotopy: slopes, endpoints, lower bound") {
    const double R = 0.5, rho = 2.0, mu = 0.1, delta = 0.5;
    HamiltonianField E;
    E.eval = [](const CVec& z, double, double) { return kPi * z.squaredNorm(); };
    const auto Eflow = path_e(2);
    const double kappa = 1.0 / R - mu;  // loop family, linear in s, F_0 = 0
    HamiltonianField Fs;
    Fs.eval = [kappa](const CVec& z, double, double s) {
        return s * kappa * kPi * z.squaredNorm();
    };
    SamplingGrid g;
    g.shells = 2;
    g.sphere_points = 12;
    g.time_samples = 16;
    g.s_samples = 5;

    const auto h = build_corresp_homotopy(E, Eflow, Fs, R, rho, mu, delta, g);
    CHECK(h.pass);
    CHECK(h.max_slope < 1.0 + delta);
    CHECK(h.tau(0.0) == 0.0);
    CHECK(h.tau(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.theta(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : {0.0, 0.2, 0.5, 0.9})
        CHECK(h.theta_prime(t) >= 1.0 - delta * delta);
    for (const auto& c : h.checks) CHECK(c.pass);

    // delta too small for any admissible ramp: construction must refuse.
    CHECK_THROWS(build_corresp_homotopy(E, Eflow, Fs, R, rho, mu, 0.005, g));
    // violated precondition delta^2 < 1 - R/rho.
    CHECK_THROWS(build_corresp_homotopy(E, Eflow, Fs, 1.9, rho, mu, 0.5, g));
}
