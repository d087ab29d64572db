#pragma once

#include <optional>

#include "contactforge/geometry.hpp"

namespace cf {

// ---------------------------------------------------------------------------
// Paths of equivariant symplectomorphisms of C^n \ {0}
// ---------------------------------------------------------------------------

struct PathFamily {
    int n = 0;
    bool is_loop = true;
    bool is_equivariant = true;
    bool has_s = false;
    // Forward/inverse evaluators. t is the path parameter (loops are
    // 1-periodic), s the optional homotopy parameter in [0,1].
    std::function<CVec(double t, double s, const CVec&)> fwd;
    std::function<CVec(double t, double s, const CVec&)> inv;
    // Matrix form for linear paths (enables exact generator evaluation).
    std::function<CMat(double t, double s)> matrix;
    // Closed-form generating Hamiltonian, when known.
    std::optional<HamiltonianField> hamiltonian;

    CVec apply(double t, const CVec& z, double s = 1.0) const { return fwd(t, s, z); }
    // Inverse map of f_t; uses the registered closed form or damped Newton.
    CVec apply_inverse(double t, const CVec& z, double s = 1.0) const;
};

// Diagonal-phase loop z_j -> e^{2 pi i k_j t} z_j; generating Hamiltonian
// sum_j k_j rho_j.
PathFamily diag_phase_path(int n, const std::vector<double>& k);

// Named generators: e_t (all phases +1), f_t (phases (n-1, -1, ..., -1)),
// g_t (phases (1,-1,0,...)), b_{j,t} (phase +1 on coordinate j).
PathFamily path_e(int n);
PathFamily path_f(int n);
PathFamily path_g(int n);
PathFamily path_b(int n, int j);  // j in 1..n (1-based)

// Rotation by angle s*pi/2 in the (z_1, z_j)-plane, j in 2..n (1-based).
CMat rotation_I(int n, int j, double s);

// h^{(s)}_{j,t} = I^{(s)}_j b_{j,t} (I^{(s)}_j)^{-1} b_{j,-t}; carries the
// closed-form Hamiltonian H^{(s)}_j(h z, t) = -pi|z_j|^2 + pi|((I^{-1} b_{j,-t} z)_j|^2.
PathFamily path_h_s(int n, int j);

// f^{(s)}_{m,t} = h^{(s)}_{2,t} o ... o h^{(s)}_{m,t}; f^{(1)} = f_t, f^{(0)} = id.
PathFamily path_f_s(int n, int m);

struct UnitaryCatalog {
    PathFamily e, f, g;
    std::vector<PathFamily> b;    // b[j-1] = b_{j,t}
    std::vector<PathFamily> h_s;  // h_s[j-2] = h^{(s)}_{j,t}, j = 2..n
    PathFamily f_s;               // f^{(s)}_{n,t}
};
UnitaryCatalog make_unitary_generators(int n);

// ---------------------------------------------------------------------------
// Hamiltonian calculus
// ---------------------------------------------------------------------------

// Hamiltonian of {f_t g_t}: F(z,t) + G(f_t^{-1} z, t).
PathFamily compose_paths(const PathFamily& f, const PathFamily& g);

// Path {g_t^{-1}} with Hamiltonian -G(g_t z, t).
PathFamily invert_path(const PathFamily& g);

// Path {a g_t a^{-1}} for a fixed equivariant symplectomorphism a (given with
// its inverse); Hamiltonian G(a^{-1} z, t).
PathFamily conjugate_path(const std::function<CVec(const CVec&)>& a,
                          const std::function<CVec(const CVec&)>& a_inv,
                          const PathFamily& g);

// H(z,t) = alpha_z(X_t(z)), X_t(z) = d/ds f_s(f_t^{-1} z)|_{s=t}; central
// differences in t with step 1e-5 (exact matrix generator for linear paths).
HamiltonianField extract_hamiltonian(const PathFamily& f);

// ---------------------------------------------------------------------------
// Map catalog on V = R^2n x S^1
// ---------------------------------------------------------------------------

// Common closed form: (z,t) -> ((1+Q(z))^{-1/2} U(t) z, t) with U(t) diagonal
// phases e^{2 pi i k_j t} and Q(z) = sum_j q_j rho_j(z). Closed-form Jacobian.
SmoothMap make_scaled_phase_map(int n, const std::vector<double>& phases,
                                const std::vector<double>& q_coeff);

// Twist F_N: (z,t) -> (v(z) e^{2 pi N i t} z, t), v = (1 + N pi|z|^2)^{-1/2}.
SmoothMap make_twist(int N, int n);

// Prop-style loop-to-embedding: Psi(z,t) = (h_t z / (1 + H(h_t z, t)), t),
// domain {1 + H > 0}; division via the R_+-action. Finite-difference Jacobian
// in general; use make_scaled_phase_map for the diagonal catalog cases.
SmoothMap make_loop_embedding(const PathFamily& h, const HamiltonianField& H);

// The cylinder-squeezing pair: Phi = f_t(z)/sqrt(1+F(z)), F = (n-1)rho_1 - varrho;
// Psi = g_t(z)/sqrt(1+G(z)), G = rho_1 - rho_2.
std::pair<SmoothMap, SmoothMap> make_squeeze_pair(int n);

// Shift by c along Re(z_1) on C^n (real 2n-dim map, no circle factor).
SmoothMap make_shift(double c, int n);

// Planck rescale (p,q,t) -> (sqrt(h) p, sqrt(h) q, h(t + p.q/2)), h = 2 pi hbar;
// target circle period h, target form du - p dq.
SmoothMap make_planck_map(double hbar, int n);

// ---------------------------------------------------------------------------
// PU(2,1) family on S^3 and its symplectization lift
// ---------------------------------------------------------------------------

struct Pu21 {
    double alpha = 0;
    SmoothMap b;           // Moebius-type map preserving S^3 (real 4-dim coords)
    SmoothMap b_inverse;
    SmoothMap cayley;      // B^4 closure minus pole -> paraboloid domain
    SmoothMap cayley_inverse;
    double dilation_s = 0;              // recovered numerically, never assumed
    double dilation_residual = 0;       // max deviation from (s^2 w1, s w2) form
    SmoothMap dilation;                 // (w1, w2) -> (s^2 w1, s w2)
};
Pu21 make_pu21(double alpha);

// Lift of the loop e_{-t} f_{3t} b e_t b^{-1} of contactomorphisms of S^3 to
// an equivariant path on C^2 \ {0} (with closed-form inverse).
PathFamily make_s3_loop(double alpha);

}  // namespace cf
