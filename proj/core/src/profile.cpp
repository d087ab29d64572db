#include "contactforge/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cf {

double ProfileFunction::operator()(double x) const {
    if (u.empty()) throw std::logic_error("ProfileFunction: no knots");
    if (x <= u.front()) return h.front();
    if (x >= u.back()) return h.back();
    const auto it = std::upper_bound(u.begin(), u.end(), x);
    const size_t k = static_cast<size_t>(it - u.begin());
    const double f = (x - u[k - 1]) / (u[k] - u[k - 1]);
    return h[k - 1] + f * (h[k] - h[k - 1]);
}

bool ProfileFunction::admissible() const {
    if (u.size() != h.size() || u.empty()) return false;
    for (size_t k = 0; k < u.size(); ++k) {
        if (!(u[k] > 0) || !(h[k] > 0)) return false;
        if (k > 0 && !(u[k] > u[k - 1])) return false;
    }
    // Constant tails have intercept equal to the value (> 0, checked above).
    for (size_t k = 1; k < u.size(); ++k) {
        const double m = (h[k] - h[k - 1]) / (u[k] - u[k - 1]);
        const double d = h[k - 1] - m * u[k - 1];
        if (!(d > 0)) return false;
    }
    return true;
}

ProfileFunction make_step_profile(double a, double b, double c) {
    if (!(0 < a) || !(a < b) || !(c > 0))
        throw std::invalid_argument("make_step_profile: need 0 < a < b, c > 0");
    ProfileFunction F;
    F.u = {a, b};
    F.h = {c, 1.0};
    return F;
}

ProfileFunction make_bump_profile(double mu, double nu, double kappa) {
    if (!(0 < mu) || !(mu < nu))
        throw std::invalid_argument("make_bump_profile: need 0 < mu < nu");
    ProfileFunction G;
    G.u = {mu, nu};
    G.h = {kappa, 0.0};
    return G;
}

ProfileFunction profile_transform(const ProfileFunction& H) {
    if (!H.admissible())
        throw std::invalid_argument("profile_transform: profile not admissible");
    ProfileFunction out;
    out.u.reserve(H.u.size());
    out.h.reserve(H.u.size());
    for (size_t k = 0; k < H.u.size(); ++k) {
        out.u.push_back(H.u[k] / H.h[k]);
        out.h.push_back(1.0 / H.h[k]);
    }
    // Admissibility makes phi strictly increasing, hence the new knots too;
    // trust but verify.
    for (size_t k = 1; k < out.u.size(); ++k)
        if (!(out.u[k] > out.u[k - 1]))
            throw std::logic_error("profile_transform: knot order violated");
    return out;
}

double transform_value(const ProfileFunction& H, double v) {
    if (!H.admissible())
        throw std::invalid_argument("transform_value: profile not admissible");
    auto phi = [&H](double x) { return x / H(x); };
    // phi is increasing and unbounded; bracket phi(u) = v.
    double lo = std::min(1e-12, H.u.front() * 1e-6);
    double hi = std::max(1.0, H.u.back());
    while (phi(hi) < v) hi *= 2.0;
    while (phi(lo) > v) lo *= 0.5;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (phi(mid) < v ? lo : hi) = mid;
    }
    const double x = 0.5 * (lo + hi);
    return v / x;
}

}  // namespace cf
