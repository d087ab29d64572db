#include "contactforge/index.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cf {

namespace {

RMat omega_matrix(int n) {  // Omega = [[0, I], [-I, 0]] in (p, q) packing
    RMat O = RMat::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        O(j, n + j) = 1.0;
        O(n + j, j) = -1.0;
    }
    return O;
}

RMat real_rep(const CMat& C) {  // C = X + iY -> [[X, -Y], [Y, X]]
    const int n = static_cast<int>(C.rows());
    RMat M(2 * n, 2 * n);
    M.topLeftCorner(n, n) = C.real();
    M.topRightCorner(n, n) = -C.imag();
    M.bottomLeftCorner(n, n) = C.imag();
    M.bottomRightCorner(n, n) = C.real();
    return M;
}

CMat complex_rep(const RMat& M) {
    const int n = static_cast<int>(M.rows()) / 2;
    return M.topLeftCorner(n, n).cast<Cplx>() +
           Cplx(0, 1) * M.bottomLeftCorner(n, n).cast<Cplx>();
}

RMat central_derivative(const SymplecticPath& path, double t, double h = 1e-6) {
    if (t - h < 0.0) return (path.at(t + h) - path.at(t)) / h;
    if (t + h > 1.0) return (path.at(t) - path.at(t - h)) / h;
    return (path.at(t + h) - path.at(t - h)) / (2.0 * h);
}

// Signature of Gamma(v) = omega(v, Psidot v) restricted to a kernel basis.
int crossing_signature(const RMat& omega, const RMat& psidot, const RMat& kernel,
                       int* dim_out) {
    const RMat A = kernel.transpose() * omega * psidot * kernel;
    const RMat M = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<RMat> es(M);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    int sig = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double ev = es.eigenvalues()[i];
        if (ev > 1e-8 * scale)
            ++sig;
        else if (ev < -1e-8 * scale)
            --sig;
        else
            throw std::runtime_error("cz_index: degenerate crossing form");
    }
    if (dim_out) *dim_out = static_cast<int>(kernel.cols());
    return sig;
}

double sigma_min_of_gap(const SymplecticPath& path, double t) {
    const RMat M = path.at(t) - RMat::Identity(2 * path.n, 2 * path.n);
    return M.jacobiSvd().singularValues().minCoeff();
}

}  // namespace

SymplecticPath unitary_diag_path(int n, const std::vector<double>& a) {
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("unitary_diag_path: need n exponents");
    SymplecticPath p;
    p.n = n;
    p.is_loop = std::all_of(a.begin(), a.end(), [](double x) {
        return std::abs(x - std::round(x)) < 1e-12;
    });
    p.at = [n, a](double t) {
        CMat C = CMat::Zero(n, n);
        for (int j = 0; j < n; ++j)
            C(j, j) = std::polar(1.0, kTwoPi * a[j] * t);
        return real_rep(C);
    };
    return p;
}

SymplecticPath quadratic_flow_path(const RMat& S) {
    if (S.rows() != S.cols() || S.rows() % 2 != 0)
        throw std::invalid_argument("quadratic_flow_path: need even square S");
    const int n = static_cast<int>(S.rows()) / 2;
    RMat J0 = RMat::Zero(2 * n, 2 * n);  // (a, b) -> (-b, a)
    for (int j = 0; j < n; ++j) {
        J0(j, n + j) = -1.0;
        J0(n + j, j) = 1.0;
    }
    const RMat G = J0 * 0.5 * (S + S.transpose());
    SymplecticPath p;
    p.n = n;
    // exp(tG) by scaling-and-squaring on the fixed generator.
    p.at = [G](double t) {
        RMat A = t * G;
        int squarings = 0;
        double norm = A.cwiseAbs().sum();
        while (norm > 0.25) {
            A *= 0.5;
            norm *= 0.5;
            ++squarings;
        }
        RMat E = RMat::Identity(A.rows(), A.cols());
        RMat term = E;
        for (int k = 1; k <= 16; ++k) {
            term = (term * A) / k;
            E += term;
        }
        for (int i = 0; i < squarings; ++i) E = E * E;
        return E;
    };
    return p;
}

SymplecticPath concatenate(const SymplecticPath& first,
                           const SymplecticPath& second) {
    if (first.n != second.n)
        throw std::invalid_argument("concatenate: dimension mismatch");
    SymplecticPath p;
    p.n = first.n;
    auto f = first.at, s = second.at;
    p.at = [f, s](double t) -> RMat {
        if (t <= 0.5) return f(2.0 * t);
        return s(2.0 * t - 1.0) * f(1.0);
    };
    return p;
}

int maslov_index(const SymplecticPath& loop, int t_samples) {
    double winding = 0.0;
    double prev_arg = 0.0;
    for (int i = 0; i <= t_samples; ++i) {
        const double t = static_cast<double>(i) / t_samples;
        const RMat Psi = loop.at(t);
        // Unitary polar part via SVD: Psi = W Sigma V^T -> U = W V^T.
        Eigen::JacobiSVD<RMat> svd(Psi, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RMat U = svd.matrixU() * svd.matrixV().transpose();
        const Cplx det = complex_rep(U).determinant();
        const double arg = std::arg(det);
        if (i > 0) {
            double d = arg - prev_arg;
            while (d > kPi) d -= kTwoPi;
            while (d < -kPi) d += kTwoPi;
            winding += d;
        }
        prev_arg = arg;
    }
    const double w = winding / kTwoPi;
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > 1e-3)
        throw std::runtime_error("maslov_index: non-integer winding (not a loop?)");
    return 2 * static_cast<int>(rounded);
}

CzResult cz_index(const SymplecticPath& path, int scan_samples,
                  double kernel_tol) {
    const int n = path.n;
    const RMat omega = omega_matrix(n);
    const RMat I = RMat::Identity(2 * n, 2 * n);
    CzResult out;

    if (sigma_min_of_gap(path, 1.0) < kernel_tol)
        throw std::runtime_error("cz_index: degenerate endpoint Psi(1)");

    // t = 0 contribution: the kernel is everything, Psidot one-sided.
    {
        const double h = 1e-6;
        const RMat psidot = (path.at(h) - path.at(0.0)) / h;
        out.mu_rs += 0.5 * crossing_signature(omega, psidot, I, nullptr);
    }

    // Interior crossings: scan sigma_min(Psi(t) - I), refine local minima.
    std::vector<double> sig(scan_samples + 1);
    for (int i = 0; i <= scan_samples; ++i)
        sig[i] = sigma_min_of_gap(path, static_cast<double>(i) / scan_samples);

    const double coarse = 0.2;
    std::vector<double> crossing_ts;
    for (int i = 1; i < scan_samples; ++i) {
        if (sig[i] > coarse) continue;
        if (!(sig[i] <= sig[i - 1] && sig[i] <= sig[i + 1])) continue;
        // Ternary-search refinement on [t_{i-1}, t_{i+1}].
        double lo = static_cast<double>(i - 1) / scan_samples;
        double hi = static_cast<double>(i + 1) / scan_samples;
        for (int it = 0; it < 80; ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (sigma_min_of_gap(path, m1) < sigma_min_of_gap(path, m2))
                hi = m2;
            else
                lo = m1;
        }
        const double t = 0.5 * (lo + hi);
        if (t <= 1e-9 || t >= 1.0 - 1e-9) continue;  // t = 0 handled above
        if (sigma_min_of_gap(path, t) < kernel_tol) crossing_ts.push_back(t);
    }
    // Merge refinements that converged to the same crossing.
    std::sort(crossing_ts.begin(), crossing_ts.end());
    crossing_ts.erase(std::unique(crossing_ts.begin(), crossing_ts.end(),
                                  [scan_samples](double a, double b) {
                                      return b - a < 0.5 / scan_samples;
                                  }),
                      crossing_ts.end());

    for (const double t : crossing_ts) {
        const RMat gap = path.at(t) - I;
        Eigen::JacobiSVD<RMat> svd(gap, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        int dim = 0;
        for (int i = static_cast<int>(sv.size()) - 1; i >= 0; --i)
            if (sv[i] < kernel_tol * 10.0) ++dim;
        if (dim == 0) continue;
        const RMat kernel = svd.matrixV().rightCols(dim);
        CrossingInfo info;
        info.t = t;
        info.signature =
            crossing_signature(omega, central_derivative(path, t), kernel,
                               &info.kernel_dim);
        out.mu_rs += info.signature;
        out.crossings.push_back(info);
    }

    const double cz = n - out.mu_rs;
    const double rounded = std::round(cz);
    if (std::abs(cz - rounded) > 1e-9)
        throw std::runtime_error("cz_index: non-integer result");
    out.cz = static_cast<int>(rounded);
    return out;
}

int cz_unitary_oracle(const std::vector<double>& a) {
    int total = 0;
    for (double aj : a) {
        if (std::abs(aj - std::round(aj)) < 1e-12)
            throw std::invalid_argument(
                "cz_unitary_oracle: integer exponent gives a degenerate endpoint");
        total += static_cast<int>(std::floor(aj));
    }
    return -2 * total;
}

// ---------------------------------------------------------------------------
// Ellipsoid bookkeeping
// ---------------------------------------------------------------------------

int ellipsoid_degree(int n, int N, double R) {
    if (n < 1 || N < 1 || !(R > 0))
        throw std::invalid_argument("ellipsoid_degree: bad arguments");
    return -2 * static_cast<int>(std::floor(1.0 / R)) -
           2 * (n - 1) * static_cast<int>(std::floor(1.0 / (N * R)));
}

ChGroup ch_ellipsoid(int n, int N, double R) {
    ChGroup g;
    g.degree = ellipsoid_degree(n, N, R);
    g.group = "Z2";
    return g;
}

bool ball_inclusion_iso(double R1, double R2) {
    if (!(R1 > 0) || !(R2 >= R1))
        throw std::invalid_argument("ball_inclusion_iso: need 0 < R1 <= R2");
    for (int k = 1; k <= static_cast<int>(1.0 / R1) + 2; ++k) {
        const double lo = 1.0 / k;
        if (!(lo < R1)) continue;
        if (k == 1) return true;  // 1 < R1 <= R2 < infinity
        if (R2 < 1.0 / (k - 1.0)) return true;
        return false;  // R1 pins down k uniquely
    }
    return false;
}

std::vector<double> action_spectrum(int N, double R, int m_max) {
    if (N < 1 || !(R > 0) || m_max < 1)
        throw std::invalid_argument("action_spectrum: bad arguments");
    std::set<double> vals;
    for (int m = 1; m <= m_max; ++m) {
        vals.insert(-m * R);
        vals.insert(-m * N * R);
    }
    return {vals.rbegin(), vals.rend()};
}

bool non_resonant(int N, double R, int m_max, double tol) {
    for (double v : action_spectrum(N, R, m_max))
        if (std::abs(v - (-1.0)) < tol) return false;
    return true;
}

bool period_action_check(int n, int N, double R, int m_max, double tol) {
    // Reeb frequencies 1/R (first coordinate) and 1/(NR) (the rest):
    // e^{2 pi i t / R} returns at t = m R; actions recorded as -period.
    const auto spec = action_spectrum(N, R, m_max);
    auto contains = [&](double v) {
        for (double s : spec)
            if (std::abs(s - v) < tol) return true;
        return false;
    };
    for (int m = 1; m <= m_max; ++m) {
        const double t1 = m * R;
        if (std::abs(std::remainder(t1 / R, 1.0)) > tol) return false;
        if (!contains(-t1)) return false;
        if (n > 1) {
            const double t2 = m * N * R;
            if (std::abs(std::remainder(t2 / (N * R), 1.0)) > tol) return false;
            if (!contains(-t2)) return false;
        }
    }
    return true;
}

}  // namespace cf
