#pragma once

#include <vector>

#include "contactforge/common.hpp"

namespace cf {

// Piecewise-linear positive profile H(u) on (0, infinity): linear between
// knots, constant beyond the first/last knot. Closed under the transform
// H -> Hbar with Hbar(v) = v / phi_H^{-1}(v), phi_H(u) = u / H(u).
struct ProfileFunction {
    std::vector<double> u;  // strictly increasing knot locations
    std::vector<double> h;  // values at the knots

    double operator()(double x) const;
    // Every linear piece H = m u + d has intercept d > 0 (the admissibility
    // condition making phi_H strictly increasing).
    bool admissible() const;
};

// F_{a,b,c}: equals c on (0, a], 1 on [b, infinity), linear between;
// requires 0 < a < b < 1 < c... (only a < b and c > 0 enforced here).
ProfileFunction make_step_profile(double a, double b, double c);

// G_{mu,nu,kappa}: equals kappa on (0, mu], 0 on [nu, infinity), linear
// between. Used for differences; not transformable (values reach 0).
ProfileFunction make_bump_profile(double mu, double nu, double kappa);

// Exact transform: knots (u_k, H_k) -> (u_k / H_k, 1 / H_k). Involutive;
// order-reversing (H1 <= H2 pointwise implies H1bar >= H2bar pointwise).
ProfileFunction profile_transform(const ProfileFunction& H);

// Numeric oracle: Hbar(v) = v / phi^{-1}(v) with phi inverted by bisection.
double transform_value(const ProfileFunction& H, double v);

}  // namespace cf
