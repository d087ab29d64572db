#include <doctest.h>

#include "contactforge/maps.hpp"

using namespace cf;

namespace {
CVec zpt(double a, double b, double c, double d) {
    CVec z(2);
    z[0] = Cplx(a, b);
    z[1] = Cplx(c, d);
    return z;
}
const CVec z0 = zpt(0.4, -0.2, 0.9, 0.3);
}  // namespace

TEST_CASE("diagonal phase loops: matrices and Hamiltonians") {
    auto e = path_e(2);
    const CMat M = e.matrix(0.25, 1.0);
    CHECK(std::abs(M(0, 0) - std::polar(1.0, kTwoPi * 0.25)) < 1e-14);
    REQUIRE(e.hamiltonian);
    CHECK((*e.hamiltonian)(z0, 0.3, 1.0) ==
          doctest::Approx(kPi * z0.squaredNorm()));

    auto f = path_f(2);
    const auto ri = radial_invariants(z0);
    CHECK((*f.hamiltonian)(z0, 0.1, 1.0) ==
          doctest::Approx(ri.rho[0] - ri.varrho));  // n = 2: (n-1)rho_1 - varrho
}

TEST_CASE("extract_hamiltonian agrees with the closed forms") {
    const std::vector<PathFamily> paths = {path_e(2), path_f(2), path_g(2)};
    for (const auto& p : paths) {
        auto H = extract_hamiltonian(p);
        for (double t : {0.0, 0.3, 0.75})
            CHECK(H(z0, t, 1.0) ==
                  doctest::Approx((*p.hamiltonian)(z0, t, 1.0)).epsilon(1e-7));
    }
}

TEST_CASE("composition, inversion, conjugation rules") {
    auto e = path_e(2), f = path_f(2);
    auto ef = compose_paths(e, f);
    auto Hnum = extract_hamiltonian(ef);
    REQUIRE(ef.hamiltonian);
    for (double t : {0.15, 0.6})
        CHECK((*ef.hamiltonian)(z0, t, 1.0) ==
              doctest::Approx(Hnum(z0, t, 1.0)).epsilon(1e-6));

    auto finv = invert_path(f);
    auto Hinv = extract_hamiltonian(finv);
    for (double t : {0.2, 0.7})
        CHECK((*finv.hamiltonian)(z0, t, 1.0) ==
              doctest::Approx(Hinv(z0, t, 1.0)).epsilon(1e-6));

    // Conjugation by a fixed unitary (symplectic, so the Hamiltonian rule
    // K = G o a^{-1} applies without a conformal factor).
    const std::complex<double> w1 = std::polar(1.0, 0.7), w2 = std::polar(1.0, -1.3);
    auto a = [w1, w2](const CVec& z) {
        CVec y = z;
        y[0] *= w1;
        y[1] *= w2;
        return y;
    };
    auto ainv = [w1, w2](const CVec& z) {
        CVec y = z;
        y[0] /= w1;
        y[1] /= w2;
        return y;
    };
    auto conj = conjugate_path(a, ainv, f);
    auto Hc = extract_hamiltonian(conj);
    for (double t : {0.2, 0.7})
        CHECK((*conj.hamiltonian)(z0, t, 1.0) ==
              doctest::Approx(Hc(z0, t, 1.0)).epsilon(1e-6));
}

TEST_CASE("f^{(s)} family: endpoints and closed Hamiltonian") {
    auto fs = path_f_s(2, 2);
    // s = 0 is the identity; s = 1 is f_t.
    const CMat M0 = fs.matrix(0.37, 0.0);
    CHECK((M0 - CMat::Identity(2, 2)).norm() < 1e-12);
    const CMat M1 = fs.matrix(0.37, 1.0);
    const CMat F = path_f(2).matrix(0.37, 1.0);
    CHECK((M1 - F).norm() < 1e-12);

    REQUIRE(fs.hamiltonian);
    auto Hnum = extract_hamiltonian(fs);
    for (double s : {0.2, 0.8})
        for (double t : {0.1, 0.55})
            CHECK((*fs.hamiltonian)(z0, t, s) ==
                  doctest::Approx(Hnum(z0, t, s)).epsilon(1e-6));

    // Inverse round trip.
    const CVec w = fs.apply(0.3, z0, 0.6);
    CHECK((fs.apply_inverse(0.3, w, 0.6) - z0).norm() < 1e-12);
}

TEST_CASE("twist map: closed Jacobian and contactness") {
    auto tw = make_twist(2, 2);
    RVec x(5);
    x << 0.4, -0.2, 0.9, 0.3, 0.17;
    const RMat J = tw.jacobian(x);
    const RMat Jfd = fd_jacobian(tw.eval, x);
    CHECK((J - Jfd).cwiseAbs().maxCoeff() < 1e-6);

    SamplingGrid g;
    g.sphere_points = 32;
    g.time_samples = 6;
    g.shells = 3;
    const auto r = conformal_factor_check(tw, g, 1e-8);
    CHECK(r.report.pass);
    CHECK(r.max_residual < 1e-8);
    CHECK(r.min_factor > 0.0);
}

TEST_CASE("cylinder squeeze pair is contact on its domain") {
    auto [phi, psi] = make_squeeze_pair(2);
    SamplingGrid g;
    g.sphere_points = 32;
    g.time_samples = 6;
    g.shells = 3;
    for (const auto* m : {&phi, &psi}) {
        const auto r = conformal_factor_check(*m, g, 1e-8);
        CHECK(r.report.pass);
        CHECK(r.max_residual < 1e-8);
    }
}

TEST_CASE("planck rescale: constant factor h = 2 pi hbar") {
    const double hbar = 0.31;
    auto pl = make_planck_map(hbar, 2);
    SamplingGrid g;
    g.sphere_points = 24;
    g.time_samples = 5;
    g.shells = 2;
    const auto r = conformal_factor_check(pl, g, 1e-8);
    CHECK(r.report.pass);
    const double h = kTwoPi * hbar;
    CHECK(std::abs(r.min_factor - h) < 1e-10);
    CHECK(std::abs(r.max_factor - h) < 1e-10);
}

TEST_CASE("PU(2,1) family: sphere preservation, inverses, dilation") {
    const double alpha = 0.05;
    const auto pu = make_pu21(alpha);
    RVec x(4);  // a point of S^3 in real coordinates
    x << 0.5, -0.1, 0.7, std::sqrt(1.0 - 0.25 - 0.01 - 0.49);
    const RVec y = pu.b(x);
    CHECK(y.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((pu.b_inverse(y) - x).norm() < 1e-12);

    const RVec w = pu.cayley(x);
    CHECK((pu.cayley_inverse(w) - x).norm() < 1e-10);

    // The recovered dilation parameter equals coth(alpha / 2).
    CHECK(pu.dilation_s ==
          doctest::Approx(1.0 / std::tanh(alpha / 2.0)).epsilon(1e-6));
    CHECK(pu.dilation_residual < 1e-8);
}

TEST_CASE("S^3 loop lift: closure, equivariance, positivity sample") {
    auto loop = make_s3_loop(0.05);
    CHECK((loop.apply(1.0, z0) - z0).norm() < 1e-10);
    CHECK((loop.apply(0.0, z0) - z0).norm() < 1e-10);
    // Equivariance of the lift.
    const CVec a = loop.apply(0.3, 2.0 * z0);
    const CVec b = 2.0 * loop.apply(0.3, z0);
    CHECK((a - b).norm() < 1e-9 * a.norm());
    // Inverse consistency.
    const CVec w = loop.apply(0.42, z0);
    CHECK((loop.apply_inverse(0.42, w) - z0).norm() < 1e-9);
    // The generating Hamiltonian is positive at a sample of points.
    auto H = extract_hamiltonian(loop);
    for (double t : {0.0, 0.2, 0.5, 0.9}) CHECK(H(z0, t, 1.0) > 0.0);
}
