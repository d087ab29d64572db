#include "contactforge/maps.hpp"

#include <cmath>

namespace cf {

namespace {

CMat diag_phases(int n, const std::vector<double>& k, double t) {
    CMat U = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const double ang = kTwoPi * std::fmod(k[j] * t, 1.0);
        U(j, j) = Cplx(std::cos(ang), std::sin(ang));
    }
    return U;
}

// Real 2n x 2n representation of a complex-linear map on C^n in the
// (p_1..p_n, q_1..q_n) packing.
RMat real_rep(const CMat& M) {
    const long n = M.rows();
    RMat R(2 * n, 2 * n);
    R.topLeftCorner(n, n) = M.real();
    R.topRightCorner(n, n) = -M.imag();
    R.bottomLeftCorner(n, n) = M.imag();
    R.bottomRightCorner(n, n) = M.real();
    return R;
}

}  // namespace

CVec PathFamily::apply_inverse(double t, const CVec& z, double s) const {
    if (inv) return inv(t, s, z);
    if (matrix) return matrix(t, s).inverse() * z;
    // Damped Newton in real coordinates, seeded at z.
    RVec x = to_real(z);
    const RVec target = x;
    auto F = [&](const RVec& v) { return to_real(fwd(t, s, to_complex(v))); };
    for (int it = 0; it < 80; ++it) {
        const RVec r = F(x) - target;
        if (r.norm() < 1e-12 * std::max(1.0, target.norm())) return to_complex(x);
        const RMat J = fd_jacobian(F, x);
        RVec step = J.fullPivLu().solve(r);
        double lam = 1.0;
        while (lam > 1e-4 && (F(x - lam * step) - target).norm() >= r.norm())
            lam *= 0.5;
        x -= lam * step;
    }
    const RVec r = F(x) - target;
    if (r.norm() > 1e-8 * std::max(1.0, target.norm()))
        throw std::runtime_error("PathFamily::apply_inverse: Newton did not converge");
    return to_complex(x);
}

PathFamily diag_phase_path(int n, const std::vector<double>& k) {
    if (static_cast<int>(k.size()) != n)
        throw std::invalid_argument("diag_phase_path: phase count mismatch");
    PathFamily p;
    p.n = n;
    p.matrix = [n, k](double t, double) { return diag_phases(n, k, t); };
    p.fwd = [n, k](double t, double, const CVec& z) -> CVec {
        return diag_phases(n, k, t) * z;
    };
    p.inv = [n, k](double t, double, const CVec& z) -> CVec {
        return diag_phases(n, k, -t) * z;
    };
    HamiltonianField H;
    H.eval = [k](const CVec& z, double, double) {
        double h = 0;
        for (size_t j = 0; j < k.size(); ++j) h += k[j] * kPi * std::norm(z[j]);
        return h;
    };
    p.hamiltonian = H;
    return p;
}

PathFamily path_e(int n) { return diag_phase_path(n, std::vector<double>(n, 1.0)); }

PathFamily path_f(int n) {
    std::vector<double> k(n, -1.0);
    k[0] = n - 1.0;
    return diag_phase_path(n, k);
}

PathFamily path_g(int n) {
    if (n < 2) throw std::invalid_argument("path_g: n >= 2 required");
    std::vector<double> k(n, 0.0);
    k[0] = 1.0;
    k[1] = -1.0;
    return diag_phase_path(n, k);
}

PathFamily path_b(int n, int j) {
    if (j < 1 || j > n) throw std::invalid_argument("path_b: coordinate out of range");
    std::vector<double> k(n, 0.0);
    k[j - 1] = 1.0;
    return diag_phase_path(n, k);
}

CMat rotation_I(int n, int j, double s) {
    if (j < 2 || j > n) throw std::invalid_argument("rotation_I: j in 2..n required");
    CMat I = CMat::Identity(n, n);
    const double ang = s * kPi / 2.0;  // s in [0,1] rescales the rotation angle
    const double c = std::cos(ang), sn = std::sin(ang);
    I(0, 0) = c;
    I(0, j - 1) = -sn;
    I(j - 1, 0) = sn;
    I(j - 1, j - 1) = c;
    return I;
}

PathFamily path_h_s(int n, int j) {
    if (j < 2 || j > n) throw std::invalid_argument("path_h_s: j in 2..n required");
    PathFamily p;
    p.n = n;
    p.has_s = true;
    std::vector<double> kj(n, 0.0);
    kj[j - 1] = 1.0;
    auto mat = [n, j, kj](double t, double s) -> CMat {
        const CMat I = rotation_I(n, j, s);
        return I * diag_phases(n, kj, t) * I.transpose() * diag_phases(n, kj, -t);
    };
    p.matrix = mat;
    p.fwd = [mat](double t, double s, const CVec& z) -> CVec { return mat(t, s) * z; };
    p.inv = [mat](double t, double s, const CVec& z) -> CVec {
        return mat(t, s).adjoint() * z;
    };
    HamiltonianField H;
    H.eval = [n, j, kj, mat](const CVec& w, double t, double s) {
        const CVec z = mat(t, s).adjoint() * w;  // point with h^{(s)}_{j,t} z = w
        const CVec y = rotation_I(n, j, s).transpose() * (diag_phases(n, kj, -t) * z);
        return -kPi * std::norm(z[j - 1]) + kPi * std::norm(y[j - 1]);
    };
    p.hamiltonian = H;
    return p;
}

PathFamily path_f_s(int n, int m) {
    if (m < 2 || m > n) throw std::invalid_argument("path_f_s: m in 2..n required");
    // Composition propagates the closed-form Hamiltonians of the factors.
    PathFamily p = path_h_s(n, 2);
    for (int j = 3; j <= m; ++j) p = compose_paths(p, path_h_s(n, j));
    return p;
}

UnitaryCatalog make_unitary_generators(int n) {
    if (n < 2) throw std::invalid_argument("make_unitary_generators: n >= 2 required");
    UnitaryCatalog c{path_e(n), path_f(n), path_g(n), {}, {}, path_f_s(n, n)};
    for (int j = 1; j <= n; ++j) c.b.push_back(path_b(n, j));
    for (int j = 2; j <= n; ++j) c.h_s.push_back(path_h_s(n, j));
    return c;
}

// ---------------------------------------------------------------------------
// Hamiltonian calculus
// ---------------------------------------------------------------------------

PathFamily compose_paths(const PathFamily& f, const PathFamily& g) {
    PathFamily p;
    p.n = f.n;
    p.is_loop = f.is_loop && g.is_loop;
    p.has_s = f.has_s || g.has_s;
    PathFamily fc = f, gc = g;
    p.fwd = [fc, gc](double t, double s, const CVec& z) {
        return fc.apply(t, gc.apply(t, z, s), s);
    };
    p.inv = [fc, gc](double t, double s, const CVec& z) {
        return gc.apply_inverse(t, fc.apply_inverse(t, z, s), s);
    };
    if (f.matrix && g.matrix) {
        auto fm = f.matrix, gm = g.matrix;
        p.matrix = [fm, gm](double t, double s) -> CMat { return fm(t, s) * gm(t, s); };
    }
    if (f.hamiltonian && g.hamiltonian) {
        auto F = *f.hamiltonian, G = *g.hamiltonian;
        HamiltonianField H;
        H.eval = [fc, F, G](const CVec& z, double t, double s) {
            return F(z, t, s) + G(fc.apply_inverse(t, z, s), t, s);
        };
        p.hamiltonian = H;
    }
    return p;
}

PathFamily invert_path(const PathFamily& g) {
    PathFamily p;
    p.n = g.n;
    p.is_loop = g.is_loop;
    p.has_s = g.has_s;
    PathFamily gc = g;
    p.fwd = [gc](double t, double s, const CVec& z) { return gc.apply_inverse(t, z, s); };
    p.inv = [gc](double t, double s, const CVec& z) { return gc.apply(t, z, s); };
    if (g.matrix) {
        auto gm = g.matrix;
        p.matrix = [gm](double t, double s) -> CMat { return gm(t, s).inverse(); };
    }
    if (g.hamiltonian) {
        auto G = *g.hamiltonian;
        HamiltonianField H;
        H.eval = [gc, G](const CVec& z, double t, double s) {
            return -G(gc.apply(t, z, s), t, s);
        };
        p.hamiltonian = H;
    }
    return p;
}

PathFamily conjugate_path(const std::function<CVec(const CVec&)>& a,
                          const std::function<CVec(const CVec&)>& a_inv,
                          const PathFamily& g) {
    PathFamily p;
    p.n = g.n;
    p.is_loop = g.is_loop;
    p.has_s = g.has_s;
    PathFamily gc = g;
    p.fwd = [a, a_inv, gc](double t, double s, const CVec& z) {
        return a(gc.apply(t, a_inv(z), s));
    };
    p.inv = [a, a_inv, gc](double t, double s, const CVec& z) {
        return a(gc.apply_inverse(t, a_inv(z), s));
    };
    if (g.hamiltonian) {
        auto G = *g.hamiltonian;
        HamiltonianField H;
        H.eval = [a_inv, G](const CVec& z, double t, double s) {
            return G(a_inv(z), t, s);
        };
        p.hamiltonian = H;
    }
    return p;
}

HamiltonianField extract_hamiltonian(const PathFamily& f) {
    HamiltonianField H;
    const double dt = 1e-5;
    if (f.matrix) {
        auto m = f.matrix;
        H.eval = [m, dt](const CVec& z, double t, double s) {
            const CMat M = (m(t + dt, s) - m(t - dt, s)) * m(t, s).inverse() / (2 * dt);
            return liouville_pair(z, CVec(M * z));
        };
        return H;
    }
    PathFamily fc = f;
    H.eval = [fc, dt](const CVec& z, double t, double s) {
        const CVec y = fc.apply_inverse(t, z, s);
        const CVec X = (fc.apply(t + dt, y, s) - fc.apply(t - dt, y, s)) / (2 * dt);
        return liouville_pair(z, X);
    };
    return H;
}

// ---------------------------------------------------------------------------
// Map catalog on V
// ---------------------------------------------------------------------------

SmoothMap make_scaled_phase_map(int n, const std::vector<double>& phases,
                                const std::vector<double>& q_coeff) {
    if (static_cast<int>(phases.size()) != n || static_cast<int>(q_coeff.size()) != n)
        throw std::invalid_argument("make_scaled_phase_map: coefficient size mismatch");
    SmoothMap m;
    m.dim_in = m.dim_out = 2 * n + 1;
    m.on_v = true;
    auto Q = [q_coeff](const CVec& z) {
        double q = 0;
        for (size_t j = 0; j < q_coeff.size(); ++j) q += q_coeff[j] * kPi * std::norm(z[j]);
        return q;
    };
    m.guard = [n, Q](const RVec& x) { return 1.0 + Q(to_complex(RVec(x.head(2 * n)))) > 1e-12; };
    m.eval = [n, phases, Q](const RVec& x) {
        const CVec z = to_complex(RVec(x.head(2 * n)));
        const double t = x[2 * n];
        const double sc = 1.0 / std::sqrt(1.0 + Q(z));
        const CVec w = sc * (diag_phases(n, phases, t) * z);
        RVec y(2 * n + 1);
        y.head(2 * n) = to_real(w);
        y[2 * n] = t;
        return y;
    };
    m.jac = [n, phases, q_coeff, Q](const RVec& x) {
        const CVec z = to_complex(RVec(x.head(2 * n)));
        const double t = x[2 * n];
        const CMat U = diag_phases(n, phases, t);
        const CVec uz = U * z;
        const double g = 1.0 + Q(z);
        const double sc = 1.0 / std::sqrt(g);
        // d(scale)/dx = -(1/2) g^{-3/2} dQ/dx, dQ/d(p_j,q_j) = 2 pi qc_j (p_j, q_j).
        RVec dsc(2 * n);
        for (int j = 0; j < n; ++j) {
            const double f = -0.5 * std::pow(g, -1.5) * 2.0 * kPi * q_coeff[j];
            dsc[j] = f * z[j].real();
            dsc[n + j] = f * z[j].imag();
        }
        RMat J = RMat::Zero(2 * n + 1, 2 * n + 1);
        J.topLeftCorner(2 * n, 2 * n) =
            sc * real_rep(U) + to_real(uz) * dsc.transpose();
        // d/dt: scale * U'(t) z, U' = diag(2 pi i k_j) U.
        CVec dw(n);
        for (int j = 0; j < n; ++j) dw[j] = Cplx(0, kTwoPi * phases[j]) * uz[j];
        J.block(0, 2 * n, 2 * n, 1) = to_real(CVec(sc * dw));
        J(2 * n, 2 * n) = 1.0;
        return J;
    };
    return m;
}

SmoothMap make_twist(int N, int n) {
    if (N < 1 || n < 1) throw std::invalid_argument("make_twist: N >= 1, n >= 1 required");
    const std::vector<double> v(n, static_cast<double>(N));
    return make_scaled_phase_map(n, v, v);
}

SmoothMap make_loop_embedding(const PathFamily& h, const HamiltonianField& H) {
    SmoothMap m;
    const int n = h.n;
    m.dim_in = m.dim_out = 2 * n + 1;
    m.on_v = true;
    PathFamily hc = h;
    HamiltonianField Hc = H;
    m.guard = [n, hc, Hc](const RVec& x) {
        const double t = x[2 * n];
        const CVec w = hc.apply(t, to_complex(RVec(x.head(2 * n))));
        return 1.0 + Hc(w, t) > 1e-12;
    };
    m.eval = [n, hc, Hc](const RVec& x) {
        const double t = x[2 * n];
        const CVec w = hc.apply(t, to_complex(RVec(x.head(2 * n))));
        const double d = 1.0 + Hc(w, t);
        RVec y(2 * n + 1);
        y.head(2 * n) = to_real(rplus_action(1.0 / d, w));
        y[2 * n] = t;
        return y;
    };
    return m;
}

std::pair<SmoothMap, SmoothMap> make_squeeze_pair(int n) {
    if (n < 2) throw std::invalid_argument("make_squeeze_pair: n >= 2 required");
    std::vector<double> kf(n, -1.0);
    kf[0] = n - 1.0;
    std::vector<double> kg(n, 0.0);
    kg[0] = 1.0;
    kg[1] = -1.0;
    return {make_scaled_phase_map(n, kf, kf), make_scaled_phase_map(n, kg, kg)};
}

SmoothMap make_shift(double c, int n) {
    SmoothMap m;
    m.dim_in = m.dim_out = 2 * n;
    m.eval = [c](const RVec& x) {
        RVec y = x;
        y[0] += c;
        return y;
    };
    m.jac = [n](const RVec&) { return RMat::Identity(2 * n, 2 * n); };
    return m;
}

SmoothMap make_planck_map(double hbar, int n) {
    if (!(hbar > 0)) throw std::invalid_argument("make_planck_map: hbar > 0 required");
    const double h = kTwoPi * hbar;
    SmoothMap m;
    m.dim_in = m.dim_out = 2 * n + 1;
    m.on_v = true;
    m.target_form = ContactFormKind::DuMinusPdq;
    m.target_period = h;
    const double sh = std::sqrt(h);
    m.eval = [n, h, sh](const RVec& x) {
        RVec y(2 * n + 1);
        y.head(2 * n) = sh * x.head(2 * n);
        const double pq = x.head(n).dot(x.segment(n, n));
        y[2 * n] = h * (x[2 * n] + 0.5 * pq);
        return y;
    };
    m.jac = [n, h, sh](const RVec& x) {
        RMat J = RMat::Zero(2 * n + 1, 2 * n + 1);
        J.topLeftCorner(2 * n, 2 * n) = sh * RMat::Identity(2 * n, 2 * n);
        for (int j = 0; j < n; ++j) {
            J(2 * n, j) = 0.5 * h * x[n + j];
            J(2 * n, n + j) = 0.5 * h * x[j];
        }
        J(2 * n, 2 * n) = h;
        return J;
    };
    return m;
}

// ---------------------------------------------------------------------------
// PU(2,1) maps
// ---------------------------------------------------------------------------

namespace {

struct Moebius {
    double ch, sh;
    // b(z) = ((ch z1 + 1)/(z1 + ch), sh z2/(z1 + ch))
    CVec fwd(const CVec& z) const {
        const Cplx d = z[0] + ch;
        CVec w(2);
        w[0] = (ch * z[0] + 1.0) / d;
        w[1] = sh * z[1] / d;
        return w;
    }
    // Holomorphic derivative matrix dw_i/dz_j.
    CMat dfwd(const CVec& z) const {
        const Cplx d = z[0] + ch;
        CMat J = CMat::Zero(2, 2);
        J(0, 0) = sh * sh / (d * d);
        J(1, 0) = -sh * z[1] / (d * d);
        J(1, 1) = sh / d;
        return J;
    }
    CVec bwd(const CVec& w) const {
        const Cplx d = ch - w[0];
        CVec z(2);
        z[0] = (ch * w[0] - 1.0) / d;
        z[1] = sh * w[1] / d;
        return z;
    }
    CMat dbwd(const CVec& w) const {
        const Cplx d = ch - w[0];
        CMat J = CMat::Zero(2, 2);
        J(0, 0) = sh * sh / (d * d);
        J(1, 0) = sh * w[1] / (d * d);
        J(1, 1) = sh / d;
        return J;
    }
};

SmoothMap holomorphic_map(const std::function<CVec(const CVec&)>& f,
                          const std::function<CMat(const CVec&)>& df,
                          const std::function<bool(const CVec&)>& ok) {
    SmoothMap m;
    m.dim_in = m.dim_out = 4;
    m.eval = [f](const RVec& x) { return to_real(f(to_complex(x))); };
    m.jac = [df](const RVec& x) { return real_rep(df(to_complex(x))); };
    m.guard = [ok](const RVec& x) { return ok(to_complex(x)); };
    return m;
}

}  // namespace

Pu21 make_pu21(double alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("make_pu21: alpha > 0 required");
    Pu21 out;
    out.alpha = alpha;
    const Moebius mb{std::cosh(alpha), std::sinh(alpha)};
    const double ch = mb.ch;
    out.b = holomorphic_map([mb](const CVec& z) { return mb.fwd(z); },
                            [mb](const CVec& z) { return mb.dfwd(z); },
                            [ch](const CVec& z) { return std::abs(z[0] + ch) > 1e-9; });
    out.b_inverse = holomorphic_map(
        [mb](const CVec& w) { return mb.bwd(w); },
        [mb](const CVec& w) { return mb.dbwd(w); },
        [ch](const CVec& w) { return std::abs(ch - w[0]) > 1e-9; });

    auto cay = [](const CVec& z) {
        const Cplx f = Cplx(0, 1) / (1.0 - z[0]);
        CVec w(2);
        w[0] = f * (z[0] + 1.0);
        w[1] = f * z[1];
        return w;
    };
    auto dcay = [](const CVec& z) {
        const Cplx d = 1.0 - z[0];
        CMat J = CMat::Zero(2, 2);
        J(0, 0) = Cplx(0, 2) / (d * d);
        J(1, 0) = Cplx(0, 1) * z[1] / (d * d);
        J(1, 1) = Cplx(0, 1) / d;
        return J;
    };
    auto cay_inv = [](const CVec& w) {
        const Cplx d = w[0] + Cplx(0, 1);
        CVec z(2);
        z[0] = (w[0] - Cplx(0, 1)) / d;
        z[1] = 2.0 * w[1] / d;
        return z;
    };
    auto dcay_inv = [](const CVec& w) {
        const Cplx d = w[0] + Cplx(0, 1);
        CMat J = CMat::Zero(2, 2);
        J(0, 0) = Cplx(0, 2) / (d * d);
        J(1, 0) = -2.0 * w[1] / (d * d);
        J(1, 1) = 2.0 / d;
        return J;
    };
    out.cayley = holomorphic_map(cay, dcay, [](const CVec& z) {
        return std::abs(1.0 - z[0]) > 1e-9;
    });
    out.cayley_inverse = holomorphic_map(cay_inv, dcay_inv, [](const CVec& w) {
        return std::abs(w[0] + Cplx(0, 1)) > 1e-9;
    });

    // Recover the non-isotropic dilation factor from cayley o b o cayley^{-1};
    // it is not assumed, only measured.
    auto conj = [&](const CVec& w) { return cay(mb.fwd(cay_inv(w))); };
    std::vector<CVec> samples;
    for (double a : {0.3, 0.7, 1.3}) {
        CVec w(2);
        w[0] = Cplx(0.2 * a, 1.0 + a);  // Im w1 > |w2|^2
        w[1] = Cplx(0.3, -0.1 * a);
        samples.push_back(w);
    }
    double s_acc = 0, res = 0;
    for (const auto& w : samples) {
        const CVec v = conj(w);
        const Cplx s2c = v[1] / w[1];
        const Cplx s1c = v[0] / w[0];
        res = std::max(res, std::abs(s1c - s2c * s2c));
        res = std::max(res, std::abs(s2c.imag()));
        s_acc += s2c.real();
    }
    out.dilation_s = s_acc / samples.size();
    out.dilation_residual = res;
    const double s = out.dilation_s;
    out.dilation = holomorphic_map(
        [s](const CVec& w) {
            CVec v(2);
            v[0] = s * s * w[0];
            v[1] = s * w[1];
            return v;
        },
        [s](const CVec&) {
            CMat J = CMat::Zero(2, 2);
            J(0, 0) = s * s;
            J(1, 1) = s;
            return J;
        },
        [](const CVec&) { return true; });
    return out;
}

PathFamily make_s3_loop(double alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("make_s3_loop: alpha > 0 required");
    const Moebius mb{std::cosh(alpha), std::sinh(alpha)};

    // Lift of a contactomorphism phi of S^3 to the symplectization:
    // z -> (|z|/sqrt(c(x))) phi(x), x = z/|z|, with conformal factor
    // c(x) = alpha_{phi(x)}(dphi_x(2 i x)) (the Reeb field of S^3 is 2 i z).
    auto lift = [](const std::function<CVec(const CVec&)>& f,
                   const std::function<CMat(const CVec&)>& df, const CVec& z) -> CVec {
        const double r = z.norm();
        if (!(r > 0)) throw std::domain_error("s3 lift: origin excluded");
        const CVec x = z / r;
        const CVec fx = f(x);
        const CVec v = df(x) * (Cplx(0, 2) * x);
        const double c = liouville_pair(fx, v);
        if (!(c > 0)) throw std::runtime_error("s3 lift: nonpositive conformal factor");
        return (r / std::sqrt(c)) * fx;
    };

    auto B = [mb, lift](const CVec& z) {
        return lift([mb](const CVec& x) { return mb.fwd(x); },
                    [mb](const CVec& x) { return mb.dfwd(x); }, z);
    };
    auto Binv = [mb, lift](const CVec& z) {
        return lift([mb](const CVec& x) { return mb.bwd(x); },
                    [mb](const CVec& x) { return mb.dbwd(x); }, z);
    };
    auto rot = [](double k1, double k2, double t, const CVec& z) -> CVec {
        CVec w(2);
        const double a1 = kTwoPi * std::fmod(k1 * t, 1.0), a2 = kTwoPi * std::fmod(k2 * t, 1.0);
        w[0] = Cplx(std::cos(a1), std::sin(a1)) * z[0];
        w[1] = Cplx(std::cos(a2), std::sin(a2)) * z[1];
        return w;
    };

    PathFamily p;
    p.n = 2;
    p.is_loop = true;
    // phi_t = e_{-t} f_{3t} B e_t B^{-1}
    p.fwd = [B, Binv, rot](double t, double, const CVec& z) {
        CVec y = Binv(z);
        y = rot(1, 1, t, y);          // e_t
        y = B(y);
        y = rot(3, -3, t, y);         // f_{3t} (n = 2)
        return rot(-1, -1, t, y);     // e_{-t}
    };
    p.inv = [B, Binv, rot](double t, double, const CVec& z) {
        CVec y = rot(1, 1, t, z);     // e_t
        y = rot(-3, 3, t, y);         // f_{-3t}
        y = Binv(y);
        y = rot(-1, -1, t, y);        // e_{-t}
        return B(y);
    };
    return p;
}

}  // namespace cf
