#include "contactforge/squeeze.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

namespace cf {

using Rational = boost::multiprecision::cpp_rational;

SqueezeVerdict squeezing_verdict(int n, double R1, double R2, SqueezeTarget target,
                                 std::optional<double> R3) {
    if (n < 2) throw std::invalid_argument("squeezing_verdict: need n >= 2");
    if (!(R1 > 0) || !(R2 > 0))
        throw std::invalid_argument("squeezing_verdict: radii must be positive");
    (void)target;  // the integer obstruction and the small-radius mechanism
                   // apply verbatim to both targets at these normalizations

    SqueezeVerdict v;
    if (R2 > R1) {
        v.kind = SqueezeVerdict::Kind::trivial_inclusion;
        v.branch = "trivial-inclusion";
        return v;
    }

    // Branch 1: an integer m with R2 <= m <= R1 obstructs any squeezing.
    const long m_lo = static_cast<long>(std::ceil(R2));
    if (m_lo >= 1 && static_cast<double>(m_lo) <= R1) {
        v.kind = SqueezeVerdict::Kind::non_squeezable;
        v.branch = "integer-obstruction";
        v.m = static_cast<int>(m_lo);
        return v;
    }

    // Branch 2: both radii below 1 admit a squeeze in dimension >= 2.
    if (R1 < 1.0 && R2 < 1.0) {
        v.kind = SqueezeVerdict::Kind::squeezable;
        v.branch = "small-radius-squeeze";
        return v;
    }

    // Branch 3: restricted-support window. Need m, k >= 2 with
    // R2 <= m/k <= R1 < R3 < m/(k-1).
    if (R3) {
        for (int k = 2; k <= 1000; ++k) {
            const long mmin = std::max<long>(2, static_cast<long>(std::ceil(R2 * k)));
            const long mmax = static_cast<long>(std::floor(R1 * k));
            for (long m = mmin; m <= mmax; ++m) {
                const double lo = static_cast<double>(m) / k;
                const double hi = static_cast<double>(m) / (k - 1);
                if (R2 <= lo && lo <= R1 && R1 < *R3 && *R3 < hi) {
                    v.kind = SqueezeVerdict::Kind::restricted;
                    v.branch = "restricted-window";
                    v.m = static_cast<int>(m);
                    v.k = k;
                    v.window_lo = R1;
                    v.window_hi = hi;
                    return v;
                }
            }
        }
    }

    v.kind = SqueezeVerdict::Kind::open;
    v.branch = "open";
    return v;
}

namespace {
// Doubles are dyadic rationals; this conversion is exact.
Rational to_rational(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite input");
    int exp = 0;
    const double mant = std::frexp(x, &exp);
    const long long scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rational r(scaled);
    const int shift = exp - 53;
    if (shift >= 0)
        r *= Rational(boost::multiprecision::cpp_int(1) << shift);
    else
        r /= Rational(boost::multiprecision::cpp_int(1) << (-shift));
    return r;
}
}  // namespace

IterationPlan iteration_plan(double R1, double R2, double gamma) {
    if (!(R1 > 0) || !(R2 > 0) || !(gamma > 0))
        throw std::invalid_argument("iteration_plan: inputs must be positive");
    IterationPlan plan;
    const Rational r1 = to_rational(R1), r2 = to_rational(R2), g = to_rational(gamma);
    Rational v = r1;
    plan.trajectory.push_back(R1);
    if (r2 > r1) return plan;  // N = 0
    for (int N = 1; N <= 100000; ++N) {
        // Literal iteration step...
        v = v / (1 + g * v);
        // ...cross-checked against the closed form v_N = R/(1 + N*gamma*R).
        const Rational closed = r1 / (1 + N * g * r1);
        if (v != closed)
            throw std::runtime_error("iteration_plan: closed form mismatch");
        plan.trajectory.push_back(static_cast<double>(v));
        if (v < r2) {
            plan.N = N;
            return plan;
        }
    }
    throw std::runtime_error("iteration_plan: did not reach target radius");
}

// ---------------------------------------------------------------------------
// Smooth trapezoidal ramp profile
// ---------------------------------------------------------------------------

namespace {

// Symmetric C-infinity step on [0,1]: s(x)+s(1-x)=1, flat to all orders at ends.
double cinf_step(double x) {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

// Cumulative integral of cinf_step, tabulated once (composite Simpson).
struct StepTable {
    static constexpr int kN = 4096;  // even
    std::vector<double> cum;         // cum[i] = integral over [0, i/kN]
    StepTable() {
        cum.resize(kN + 1, 0.0);
        const double h = 1.0 / kN;
        for (int i = 1; i <= kN; ++i) {
            const double x0 = (i - 1) * h, x1 = i * h;
            cum[i] = cum[i - 1] +
                     h / 6.0 *
                         (cinf_step(x0) + 4.0 * cinf_step(0.5 * (x0 + x1)) +
                          cinf_step(x1));
        }
        // Enforce the exact symmetry value: integral over [0,1] is 1/2.
        const double scale = 0.5 / cum[kN];
        for (auto& c : cum) c *= scale;
    }
    double operator()(double x) const {
        if (x <= 0) return 0;
        if (x >= 1) return 0.5;
        const double u = x * kN;
        const int i = std::min(static_cast<int>(u), kN - 1);
        const double f = u - i;
        return cum[i] + f * (cum[i + 1] - cum[i]);
    }
};

const StepTable& step_table() {
    static const StepTable t;
    return t;
}

}  // namespace

CorrespHomotopy build_corresp_homotopy(const HamiltonianField& E,
                                       const PathFamily& Eflow,
                                       const HamiltonianField& Fs, double R,
                                       double rho_out, double mu, double delta,
                                       const SamplingGrid& grid,
                                       double plateau_request) {
    if (!(delta > 0) || !(R > 0) || !(rho_out > 0))
        throw std::invalid_argument("build_corresp_homotopy: bad parameters");
    if (!(delta * delta < 1.0 - R / rho_out))
        throw std::invalid_argument(
            "build_corresp_homotopy: precondition delta^2 < 1 - R/rho violated");
    const double gap = 1.0 / R - mu;
    if (!(gap > 0) || !(rho_out * gap > 1.0) ||
        !(delta * delta < 1.0 - 1.0 / (rho_out * gap)))
        throw std::invalid_argument(
            "build_corresp_homotopy: precondition delta^2 < 1 - 1/(rho(1/R - mu)) "
            "violated");

    CorrespHomotopy h;
    h.delta = delta;
    h.R = R;
    h.rho_out = rho_out;
    h.mu = mu;

    // tau: C-infinity, tau(0)=0, tau(1)=1, tau' >= 0 with tau' < 1 + delta.
    // Trapezoidal derivative profile: zero near both endpoints (width w),
    // C-infinity ramps of width w, flat top at height v_used. The plateau
    // width adapts downward when delta is small; the profile is infeasible
    // when no slope below 0.99(1+delta) can average to 1.
    const double v_cap = 0.99 * (1.0 + delta);
    if (v_cap <= 1.0 + 1e-9)
        throw std::invalid_argument(
            "build_corresp_homotopy: delta too small for an admissible ramp "
            "(needs max slope < 1 + delta with margin)");
    const double w_cap = (1.0 - 1.0 / v_cap) / 3.0;
    const double w = std::min(plateau_request, w_cap);
    const double v_used = 1.0 / (1.0 - 3.0 * w);  // makes the integral exactly 1
    h.plateau = w;
    h.max_slope = v_used;

    const StepTable& S = step_table();
    auto sigma = [w](double t) -> double {
        if (t <= w || t >= 1.0 - w) return 0.0;
        if (t < 2.0 * w) return cinf_step((t - w) / w);
        if (t > 1.0 - 2.0 * w) return cinf_step((1.0 - w - t) / w);
        return 1.0;
    };
    auto tau_prime = [v_used, sigma](double t) { return v_used * sigma(t); };
    auto tau = [v_used, w, &S](double t) -> double {
        if (t <= w) return 0.0;
        if (t >= 1.0 - w) return 1.0;
        if (t < 2.0 * w) return v_used * w * S((t - w) / w);
        if (t <= 1.0 - 2.0 * w)
            return v_used * (w * 0.5 + (t - 2.0 * w));
        return 1.0 - v_used * w * S((1.0 - w - t) / w);
    };
    const double d = delta;
    auto theta = [d, tau](double t) { return (1.0 + d) * t - d * tau(t); };
    auto theta_prime = [d, tau_prime](double t) {
        return (1.0 + d) - d * tau_prime(t);
    };
    h.tau = tau;
    h.tau_prime = tau_prime;
    h.theta = theta;
    h.theta_prime = theta_prime;

    // Two-step homotopy Hamiltonian, s in [-1, 1].
    HamiltonianField H;
    H.homogeneous = false;
    H.eval = [E, Fs, &Eflow, R, tau, tau_prime, theta, theta_prime](
                 const CVec& z, double t, double s) -> double {
        if (s <= 0.0) {  // Step 1: interpolate E/R -> theta'(t) E/R
            const double c = (-s + (s + 1.0) * theta_prime(t)) / R;
            return c * E.eval(z, t, 0.0);
        }
        // Step 2: conjugate the loop family into the reparameterized frame.
        const double th = theta(t), tp = tau_prime(t);
        double out = theta_prime(t) / R * E.eval(z, t, 0.0);
        if (tp != 0.0) {
            const CVec w = Eflow.apply(-th / R, z);
            out += tp * Fs.eval(w, tau(t), s);
        }
        return out;
    };
    h.H = H;

    // Checks.
    const double tol = 1e-9;
    {  // theta' >= 1 - delta^2 on a dense time grid.
        BoundReport r;
        r.quantity = "theta-prime-margin";
        r.anchor = "reparameterization-slope-lower-bound";
        r.tolerance = tol;
        MinWitness mw;
        const int nt = 4096;
        for (int i = 0; i <= nt; ++i) {
            const double t = static_cast<double>(i) / nt;
            mw.update(theta_prime(t) - (1.0 - d * d), i);
            ++r.evaluated;
        }
        r.min_value = mw.value;
        r.witness_t = static_cast<double>(mw.index) / nt;
        r.pass = mw.value >= 0.0;
        h.checks.push_back(std::move(r));
    }
    {  // tau' < 1 + delta on a dense time grid.
        BoundReport r;
        r.quantity = "tau-prime-headroom";
        r.anchor = "reparameterization-slope-upper-bound";
        r.tolerance = tol;
        MinWitness mw;
        const int nt = 4096;
        for (int i = 0; i <= nt; ++i) {
            const double t = static_cast<double>(i) / nt;
            mw.update((1.0 + d) - tau_prime(t), i);
            ++r.evaluated;
        }
        r.min_value = mw.value;
        r.witness_t = static_cast<double>(mw.index) / nt;
        r.pass = mw.value > 0.0;
        h.checks.push_back(std::move(r));
    }

    const auto radii = grid.shell_radii();
    const auto sphere = grid.sphere();
    const auto times = grid.times();
    const auto svals = grid.s_values();

    {  // s = -1 endpoint recovers E/R.
        BoundReport r;
        r.quantity = "endpoint-recovery";
        r.anchor = "homotopy-start-matches-ambient-hamiltonian";
        r.tolerance = 1e-10;
        MinWitness mw;
        long idx = 0;
        for (const auto& rad : radii)
            for (const auto& x : sphere)
                for (const auto& t : times) {
                    CVec z = rad * x;
                    const double dev =
                        std::abs(H.eval(z, t, -1.0) - E.eval(z, t, 0.0) / R);
                    mw.update(r.tolerance - dev, idx++);
                    ++r.evaluated;
                }
        r.min_value = mw.value;
        r.pass = mw.value >= 0.0;
        h.checks.push_back(std::move(r));
    }
    {  // s = 1 endpoint dominates (1 + delta) E / R.
        BoundReport r;
        r.quantity = "endpoint-positivity";
        r.anchor = "homotopy-end-dominates-scaled-ambient";
        r.tolerance = tol;
        MinWitness mw;
        long idx = 0;
        for (const auto& rad : radii)
            for (const auto& x : sphere)
                for (const auto& t : times) {
                    CVec z = rad * x;
                    mw.update(H.eval(z, t, 1.0) -
                                  (1.0 + d) * E.eval(z, t, 0.0) / R,
                              idx++);
                    ++r.evaluated;
                }
        r.min_value = mw.value;
        // Equality is attained where tau' = 0 (the homotopy coincides with
        // the scaled ambient Hamiltonian there); require >= up to rounding.
        r.pass = mw.value >= -tol;
        h.checks.push_back(std::move(r));
    }
    {  // Uniform lower bound H_s >= (1/R - mu)(1 - delta^2) E over s in [0,1].
        BoundReport r;
        r.quantity = "step2-lower-bound";
        r.anchor = "homotopy-uniform-lower-bound";
        r.tolerance = tol;
        MinWitness mw;
        const double c0 = gap * (1.0 - d * d);
        long idx = 0;
        for (const auto& rad : radii)
            for (const auto& x : sphere)
                for (const auto& t : times)
                    for (const auto& s : svals) {
                        CVec z = rad * x;
                        mw.update(H.eval(z, t, s) - c0 * E.eval(z, t, 0.0),
                                  idx++);
                        ++r.evaluated;
                    }
        r.min_value = mw.value;
        r.pass = mw.value > 0.0;
        h.checks.push_back(std::move(r));
    }

    h.pass = true;
    for (const auto& c : h.checks) h.pass = h.pass && c.pass;
    return h;
}

CapacityBracket capacity_bracket(double c_under, double c_over) {
    if (!(c_under > 0) || !(c_over >= c_under))
        throw std::invalid_argument("capacity_bracket: need 0 < c_under <= c_over");
    CapacityBracket b;
    b.c_under = c_under;
    b.c_over = c_over;
    b.point_estimate = (c_over - c_under) <= 1e-12 * c_over;
    b.negligibility_rescale = c_over * c_over;
    b.note = b.point_estimate ? "bracket collapses to a point estimate"
                              : "interval passthrough; no squeezing inference "
                                "beyond the recorded bracket";
    return b;
}

}  // namespace cf
