#pragma once

#include "contactforge/geometry.hpp"

namespace cf {

// ---------------------------------------------------------------------------
// Paths of symplectic matrices (real 2n x 2n, packing (p_1..p_n, q_1..q_n))
// ---------------------------------------------------------------------------

struct SymplecticPath {
    int n = 1;
    std::function<RMat(double t)> at;  // Psi(t), t in [0,1], Psi(0) = I
    bool is_loop = false;
};

// z_j -> e^{2 pi i a_j t} z_j.
SymplecticPath unitary_diag_path(int n, const std::vector<double>& a);

// Flow of the quadratic Hamiltonian H = (1/2) x^T S x: Psi(t) = exp(t J0 S),
// J0 (a,b) = (-b, a), matching pdot = -H_q, qdot = +H_p.
SymplecticPath quadratic_flow_path(const RMat& S);

// first on [0,1/2] (time-rescaled), then second(2t-1) * first(1). Crossing
// counts are invariant under the rescaling; keep junction values nondegenerate.
SymplecticPath concatenate(const SymplecticPath& first,
                           const SymplecticPath& second);

// ---------------------------------------------------------------------------
// Index computations
// ---------------------------------------------------------------------------

// Maslov index of a loop: twice the winding number of det of the unitary
// polar part U = Psi (Psi^T Psi)^{-1/2}, read as a complex matrix.
int maslov_index(const SymplecticPath& loop, int t_samples = 2048);

struct CrossingInfo {
    double t = 0;
    int kernel_dim = 0;
    int signature = 0;  // of Gamma(v) = omega(v, Psidot v) on ker(Psi - I)
};

struct CzResult {
    int cz = 0;          // n - mu_RS
    double mu_rs = 0;    // (1/2) sign Gamma(0) + sum over interior crossings
    std::vector<CrossingInfo> crossings;  // interior crossings only
};

// Robbin-Salamon crossing count for a path with nondegenerate right endpoint.
// Crossings are located by scanning sigma_min(Psi(t) - I) and refining;
// degenerate crossings (singular Gamma on the kernel) raise an exception.
CzResult cz_index(const SymplecticPath& path, int scan_samples = 4096,
                  double kernel_tol = 1e-7);

// Independent oracle for unitary diagonal paths with non-integer exponents.
int cz_unitary_oracle(const std::vector<double>& a);

// ---------------------------------------------------------------------------
// Ellipsoid bookkeeping: E(R, NR, ..., NR) in C^n
// ---------------------------------------------------------------------------

// k(N, R) = -2 floor(1/R) - 2 (n-1) floor(1/(NR)).
int ellipsoid_degree(int n, int N, double R);

struct ChGroup {
    int degree = 0;
    std::string group = "Z2";  // one copy of Z/2 in the stated degree
};
ChGroup ch_ellipsoid(int n, int N, double R);

// Balls of capacities R1 <= R2 have isomorphic invariants iff some integer
// k >= 1 satisfies 1/k < R1 <= R2 < 1/(k-1)  (right bound void for k = 1).
bool ball_inclusion_iso(double R1, double R2);

// {-m R} union {-m N R}, m = 1..m_max, sorted descending (closest to 0 first).
std::vector<double> action_spectrum(int N, double R, int m_max);
bool non_resonant(int N, double R, int m_max, double tol = 1e-9);

// Closed Reeb orbits of the ellipsoid flow (frequencies 1/R, then 1/(NR))
// return to their start at t = mR resp. t = mNR; checks the recorded actions
// are the negatives of those periods.
bool period_action_check(int n, int N, double R, int m_max, double tol = 1e-9);

}  // namespace cf
