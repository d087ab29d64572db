#pragma once

#include <functional>
#include <optional>

#include "contactforge/common.hpp"
#include "contactforge/report.hpp"

namespace cf {

// ---------------------------------------------------------------------------
// Points and covectors
// ---------------------------------------------------------------------------

// A point of C^n = R^2n; z = p + iq.
struct PhasePoint {
    CVec z;
    long n() const { return z.size(); }
    RVec real() const { return to_real(z); }
};

// A point of V = R^2n x S^1.
struct ContactPoint {
    CVec z;
    double t = 0;  // stored mod 1
};

// Real-linear functional; coefficients pair with tangent vectors in the
// packing (dp_1..dp_n, dq_1..dq_n[, dt]).
struct Covector {
    RVec coeff;
    double pair(const RVec& v) const { return coeff.dot(v); }
};

struct RadialInvariants {
    RVec rho;        // rho_j = pi |z_j|^2
    double varrho;   // rho_2 + ... + rho_n
    double total;    // rho = sum of all rho_j
};

RadialInvariants radial_invariants(const CVec& z);

// The R_+-action on the symplectization: c * z = sqrt(c) z, c > 0.
CVec rplus_action(double c, const CVec& z);

// alpha_z = (1/2)(p dq - q dp) as a covector at z.
Covector liouville_form(const CVec& z);

// alpha_z(v) for a complex tangent vector; equals (1/2) sum Im(conj(z_j) v_j).
double liouville_pair(const CVec& z, const CVec& v);

// (dt - alpha) at a point of V, coefficients (dp, dq, dt).
Covector contact_form(const ContactPoint& pt);

// ---------------------------------------------------------------------------
// Differentiable-map abstraction
// ---------------------------------------------------------------------------

// Which 1-form lives on the target of a map of V (the rescaling map changes
// coordinates to (p,q,u) with form du - p dq and circle period h).
enum class ContactFormKind { StandardDtMinusAlpha, DuMinusPdq };

struct SmoothMap {
    int dim_in = 0;   // real dimension of the source (incl. circle coord if on_v)
    int dim_out = 0;
    bool on_v = false;  // acts on R^2n x S^1 (last coordinate is t)
    ContactFormKind target_form = ContactFormKind::StandardDtMinusAlpha;
    double target_period = 1.0;
    std::function<RVec(const RVec&)> eval;
    std::function<RMat(const RVec&)> jac;     // closed form; empty -> finite differences
    std::function<bool(const RVec&)> guard;   // empty -> all of R^d

    bool in_domain(const RVec& x) const { return !guard || guard(x); }
    RVec operator()(const RVec& x) const { return eval(x); }
    RMat jacobian(const RVec& x) const;
    bool has_closed_jacobian() const { return static_cast<bool>(jac); }
};

// Central finite differences, step 1e-6 * max(1, |coordinate|).
RMat fd_jacobian(const std::function<RVec(const RVec&)>& f, const RVec& x);

SmoothMap identity_map(int n, bool on_v);

// ---------------------------------------------------------------------------
// Sampling grid
// ---------------------------------------------------------------------------

struct SamplingGrid {
    int n = 2;                    // complex dimension
    int shells = 8;               // log-spaced radii |z| over [r_min, r_max]
    double r_min = 0.25;
    double r_max = 4.0;
    int sphere_points = 512;      // quasi-random points per unit sphere shell
    int time_samples = 64;
    int s_samples = 16;
    std::uint64_t seed = 0;

    std::vector<double> shell_radii() const;
    // Deterministic low-discrepancy points on the unit sphere of C^n (Halton
    // sequence -> Box-Muller -> normalize), offset by seed.
    std::vector<CVec> sphere() const;
    std::vector<double> times() const;      // k / time_samples, k = 0..time_samples-1
    std::vector<double> s_values() const;   // uniform on [0,1] incl. endpoints
    GridInfo info() const;
};

// ---------------------------------------------------------------------------
// Hamiltonian calculus on the symplectization
// ---------------------------------------------------------------------------

struct HamiltonianField {
    // (z, t, s) -> R; s is ignored by plain Hamiltonians.
    std::function<double(const CVec&, double, double)> eval;
    bool homogeneous = true;  // degree 1 under the R_+-action
    double operator()(const CVec& z, double t = 0, double s = 0) const {
        return eval(z, t, s);
    }
    bool valid() const { return static_cast<bool>(eval); }
};

// Hamiltonian vector field, sign calibrated so that H = pi|z|^2 generates
// z -> e^{2 pi i t} z:  pdot = -dH/dq, qdot = +dH/dp. Numerical gradient.
CVec sgrad(const HamiltonianField& H, const CVec& z, double t = 0, double s = 0);

// ---------------------------------------------------------------------------
// Contactness test
// ---------------------------------------------------------------------------

// At each grid point computes map*(target form) via the Jacobian, solves for
// the scalar c with map*form = c (dt - alpha), and reports the worst relative
// residual (as a negative margin) and min c. Passes iff residual < tol and
// c > 0 everywhere sampled.
struct ConformalCheckResult {
    BoundReport report;       // min over grid of (tol - residual); pass iff > 0
    double max_residual = 0;
    double min_factor = 0;
    double max_factor = 0;
};

ConformalCheckResult conformal_factor_check(const SmoothMap& map,
                                            const SamplingGrid& grid,
                                            double tol,
                                            const std::string& name = "conformal-factor",
                                            const std::string& anchor = "contactness");

// || J^T Omega J - Omega || at sampled points, for linear/equivariant maps of
// C^n; reports max residual.
double symplectic_residual(const RMat& J);

}  // namespace cf
