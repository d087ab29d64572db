#include <doctest.h>

#include "contactforge/geometry.hpp"

using namespace cf;

namespace {
CVec sample_z() {
    CVec z(2);
    z[0] = Cplx(0.3, -0.7);
    z[1] = Cplx(-1.1, 0.2);
    return z;
}
}  // namespace

TEST_CASE("radial invariants and the R+ action") {
    const CVec z = sample_z();
    const auto ri = radial_invariants(z);
    CHECK(ri.rho[0] == doctest::Approx(kPi * std::norm(z[0])));
    CHECK(ri.varrho == doctest::Approx(kPi * std::norm(z[1])));
    CHECK(ri.total == doctest::Approx(ri.rho[0] + ri.varrho));
    // rho is 1-homogeneous for the action c * z = sqrt(c) z.
    const auto rc = radial_invariants(rplus_action(2.5, z));
    CHECK(rc.total == doctest::Approx(2.5 * ri.total));
}

TEST_CASE("liouville pairing: alpha_z(iz) = |z|^2 / 2") {
    const CVec z = sample_z();
    CVec v = Cplx(0, 1) * z;
    CHECK(liouville_pair(z, v) == doctest::Approx(0.5 * z.squaredNorm()));
}

TEST_CASE("sgrad calibration: pi|z|^2 generates e^{2 pi i t} z") {
    HamiltonianField H;
    H.eval = [](const CVec& z, double, double) { return kPi * z.squaredNorm(); };
    const CVec z = sample_z();
    const CVec X = sgrad(H, z);
    const CVec want = Cplx(0, kTwoPi) * z;
    CHECK((X - want).norm() < 1e-6);
}

TEST_CASE("sampling grid is deterministic and on the unit sphere") {
    SamplingGrid g;
    g.n = 3;
    g.sphere_points = 64;
    const auto a = g.sphere();
    const auto b = g.sphere();
    REQUIRE(a.size() == 64);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK((a[i] - b[i]).norm() == 0.0);
        CHECK(a[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SamplingGrid g2 = g;
    g2.seed = 7;
    CHECK((g2.sphere()[0] - a[0]).norm() > 1e-6);  // seed moves the sequence
}

TEST_CASE("MinWitness merge is deterministic with index tie-break") {
    MinWitness a, b;
    a.update(1.0, 5);
    a.update(-2.0, 9);
    b.update(-2.0, 3);
    a.merge(b);
    CHECK(a.value == -2.0);
    CHECK(a.index == 3);  // smallest index wins ties
}

TEST_CASE("parallel_chunks covers the range exactly once") {
    std::vector<int> hits(1000, 0);
    parallel_chunks(1000, [&](long b, long e, int) {
        for (long i = b; i < e; ++i) ++hits[i];
    }, nullptr);
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("identity map is strictly contact with factor one") {
    SamplingGrid g;
    g.sphere_points = 16;
    g.time_samples = 4;
    g.shells = 2;
    const auto r = conformal_factor_check(identity_map(2 * g.n + 1, true), g, 1e-10);
    CHECK(r.report.pass);
    CHECK(r.max_residual < 1e-12);
    CHECK(r.min_factor == doctest::Approx(1.0));
    CHECK(r.max_factor == doctest::Approx(1.0));
}
