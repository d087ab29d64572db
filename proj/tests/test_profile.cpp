#include <doctest.h>

#include <random>

#include "contactforge/profile.hpp"

using namespace cf;

TEST_CASE("step profile transform: exact closed form") {
    const double a = 0.2, b = 0.8, c = 2.5;
    const auto F = make_step_profile(a, b, c);
    const auto Fbar = profile_transform(F);
    const auto expect = make_step_profile(a / c, b, 1.0 / c);
    REQUIRE(Fbar.u.size() == 2);
    CHECK(Fbar.u[0] == expect.u[0]);
    CHECK(Fbar.u[1] == expect.u[1]);
    CHECK(Fbar.h[0] == expect.h[0]);
    CHECK(Fbar.h[1] == expect.h[1]);

    // Fbar - 1 is the bump profile G_{a/c, b, -1 + 1/c}.
    const auto G = make_bump_profile(a / c, b, -1.0 + 1.0 / c);
    for (double v : {0.05, 0.1, 0.3, 0.5, 0.79, 0.9})
        CHECK(Fbar(v) - 1.0 == doctest::Approx(G(v)).epsilon(1e-14));
}

TEST_CASE("transform agrees with the numeric definition") {
    const auto F = make_step_profile(0.3, 0.7, 1.8);
    const auto Fbar = profile_transform(F);
    for (double v : {0.05, 0.2, 0.4, 0.69, 0.9})
        CHECK(Fbar(v) == doctest::Approx(transform_value(F, v)).epsilon(1e-9));
}

TEST_CASE("transform is an involution and anti-monotone (randomized)") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        // Random admissible profile: positive decreasing-intercept pieces.
        ProfileFunction H1;
        double x = u(rng);
        for (int k = 0; k < 4; ++k) {
            H1.u.push_back(x);
            H1.h.push_back(0.5 + u(rng));
            x += u(rng);
        }
        if (!H1.admissible()) continue;
        // H2 >= H1 pointwise on the same knots.
        ProfileFunction H2 = H1;
        for (auto& v : H2.h) v += 0.3;
        REQUIRE(H2.admissible());

        const auto B1 = profile_transform(H1);
        const auto B2 = profile_transform(H2);
        // Involution.
        const auto back = profile_transform(B1);
        for (size_t k = 0; k < H1.u.size(); ++k) {
            CHECK(std::abs(back.u[k] - H1.u[k]) < 1e-10);
            CHECK(std::abs(back.h[k] - H1.h[k]) < 1e-10);
        }
        // Anti-monotonicity on a sample of arguments.
        for (double v = 0.05; v < 3.0; v += 0.17)
            CHECK(B1(v) >= B2(v) - 1e-10);
    }
}

TEST_CASE("admissibility rejects zero-intercept pieces") {
    ProfileFunction bad;
    bad.u = {1.0, 2.0};
    bad.h = {1.0, 3.0};  // slope 2, intercept -1: phi not increasing
    CHECK_FALSE(bad.admissible());
    CHECK_THROWS(profile_transform(bad));
    CHECK_THROWS(make_step_profile(0.8, 0.2, 2.0));
}
