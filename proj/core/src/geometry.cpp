#include "contactforge/geometry.hpp"

#include <cmath>
#include <mutex>

namespace cf {

RadialInvariants radial_invariants(const CVec& z) {
    RadialInvariants r;
    r.rho.resize(z.size());
    r.varrho = 0;
    r.total = 0;
    for (long j = 0; j < z.size(); ++j) {
        r.rho[j] = kPi * std::norm(z[j]);
        r.total += r.rho[j];
        if (j > 0) r.varrho += r.rho[j];
    }
    return r;
}

CVec rplus_action(double c, const CVec& z) {
    if (!(c > 0)) throw std::invalid_argument("rplus_action: c must be > 0");
    return std::sqrt(c) * z;
}

Covector liouville_form(const CVec& z) {
    const long n = z.size();
    Covector a;
    a.coeff.resize(2 * n);
    for (long j = 0; j < n; ++j) {
        a.coeff[j] = -0.5 * z[j].imag();      // dp_j coefficient: -q_j/2
        a.coeff[n + j] = 0.5 * z[j].real();   // dq_j coefficient: +p_j/2
    }
    return a;
}

double liouville_pair(const CVec& z, const CVec& v) {
    double s = 0;
    for (long j = 0; j < z.size(); ++j) s += std::imag(std::conj(z[j]) * v[j]);
    return 0.5 * s;
}

Covector contact_form(const ContactPoint& pt) {
    const long n = pt.z.size();
    Covector a = liouville_form(pt.z);
    Covector lam;
    lam.coeff.resize(2 * n + 1);
    lam.coeff.head(2 * n) = -a.coeff;
    lam.coeff[2 * n] = 1.0;
    return lam;
}

RMat fd_jacobian(const std::function<RVec(const RVec&)>& f, const RVec& x) {
    const RVec f0 = f(x);
    RMat J(f0.size(), x.size());
    for (long j = 0; j < x.size(); ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        RVec xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        J.col(j) = (f(xp) - f(xm)) / (2 * h);
    }
    return J;
}

RMat SmoothMap::jacobian(const RVec& x) const {
    if (jac) return jac(x);
    return fd_jacobian(eval, x);
}

SmoothMap identity_map(int dim, bool on_v) {
    SmoothMap m;
    m.dim_in = m.dim_out = dim;
    m.on_v = on_v;
    m.eval = [](const RVec& x) { return x; };
    m.jac = [dim](const RVec&) { return RMat::Identity(dim, dim); };
    return m;
}

// ---------------------------------------------------------------------------
// Sampling grid
// ---------------------------------------------------------------------------

static double radical_inverse(std::uint64_t i, int base) {
    double inv = 1.0 / base, r = 0, f = inv;
    while (i) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

static const int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                              31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

std::vector<double> SamplingGrid::shell_radii() const {
    if (shells < 1 || !(r_min > 0) || !(r_max >= r_min))
        throw std::invalid_argument("SamplingGrid: bad shell parameters");
    std::vector<double> r(shells);
    if (shells == 1) {
        r[0] = std::sqrt(r_min * r_max);
        return r;
    }
    const double l0 = std::log(r_min), l1 = std::log(r_max);
    for (int i = 0; i < shells; ++i)
        r[i] = std::exp(l0 + (l1 - l0) * i / (shells - 1));
    return r;
}

std::vector<CVec> SamplingGrid::sphere() const {
    if (sphere_points < 1 || n < 1)
        throw std::invalid_argument("SamplingGrid: bad sphere parameters");
    const int d = 2 * n;
    if (d > 20) throw std::invalid_argument("SamplingGrid: dimension too large");
    std::vector<CVec> pts;
    pts.reserve(sphere_points);
    std::uint64_t idx = 17 + seed;  // skip the degenerate start of the sequence
    while (static_cast<int>(pts.size()) < sphere_points) {
        RVec g(d);
        // Box-Muller on consecutive Halton coordinates.
        for (int j = 0; j < d; j += 2) {
            double u1 = radical_inverse(idx, kPrimes[j]);
            double u2 = (j + 1 < d) ? radical_inverse(idx, kPrimes[j + 1]) : 0.5;
            u1 = std::max(u1, 1e-12);
            const double r = std::sqrt(-2.0 * std::log(u1));
            g[j] = r * std::cos(kTwoPi * u2);
            if (j + 1 < d) g[j + 1] = r * std::sin(kTwoPi * u2);
        }
        ++idx;
        const double norm = g.norm();
        if (norm < 1e-8) continue;
        pts.push_back(to_complex(RVec(g / norm)));
    }
    return pts;
}

std::vector<double> SamplingGrid::times() const {
    if (time_samples < 1) throw std::invalid_argument("SamplingGrid: time_samples");
    std::vector<double> t(time_samples);
    for (int i = 0; i < time_samples; ++i)
        t[i] = static_cast<double>(i) / time_samples;
    return t;
}

std::vector<double> SamplingGrid::s_values() const {
    if (s_samples < 1) throw std::invalid_argument("SamplingGrid: s_samples");
    std::vector<double> s(s_samples);
    if (s_samples == 1) {
        s[0] = 1.0;
        return s;
    }
    for (int i = 0; i < s_samples; ++i)
        s[i] = static_cast<double>(i) / (s_samples - 1);
    return s;
}

GridInfo SamplingGrid::info() const {
    GridInfo g;
    g.shells = shells;
    g.r_min = r_min;
    g.r_max = r_max;
    g.sphere_points = sphere_points;
    g.time_samples = time_samples;
    g.s_samples = s_samples;
    g.seed = seed;
    g.n = n;
    return g;
}

// ---------------------------------------------------------------------------
// sgrad
// ---------------------------------------------------------------------------

CVec sgrad(const HamiltonianField& H, const CVec& z, double t, double s) {
    const long n = z.size();
    RVec x = to_real(z);
    RVec grad(2 * n);
    for (long j = 0; j < 2 * n; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        RVec xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        grad[j] = (H(to_complex(xp), t, s) - H(to_complex(xm), t, s)) / (2 * h);
    }
    CVec v(n);
    for (long j = 0; j < n; ++j)
        v[j] = Cplx(-grad[n + j], grad[j]);  // pdot = -H_q, qdot = +H_p
    return v;
}

// ---------------------------------------------------------------------------
// Conformal-factor check
// ---------------------------------------------------------------------------

ConformalCheckResult conformal_factor_check(const SmoothMap& map,
                                            const SamplingGrid& grid,
                                            double tol,
                                            const std::string& name,
                                            const std::string& anchor) {
    if (!map.on_v)
        throw std::invalid_argument("conformal_factor_check: map must act on R^2n x S^1");
    const auto radii = grid.shell_radii();
    const auto sph = grid.sphere();
    const auto ts = grid.times();
    const long total = static_cast<long>(radii.size()) * sph.size() * ts.size();

    struct Local {
        MinWitness margin;     // tol - residual (pass iff > 0) and c > 0 encoded below
        double max_res = 0, min_c = std::numeric_limits<double>::infinity(),
               max_c = -std::numeric_limits<double>::infinity();
        long skipped = 0, evaluated = 0;
    };
    std::vector<Local> locals(std::max(1, thread_count()));

    const long nt = static_cast<long>(ts.size());
    const long np = static_cast<long>(sph.size());
    parallel_chunks(total, [&](long b, long e, int chunk) {
        Local& L = locals[chunk];
        for (long idx = b; idx < e; ++idx) {
            const long it = idx % nt;
            const long ip = (idx / nt) % np;
            const long is = idx / (nt * np);
            CVec z = radii[is] * sph[ip];
            RVec x(2 * grid.n + 1);
            x.head(2 * grid.n) = to_real(z);
            x[2 * grid.n] = ts[it];
            if (!map.in_domain(x)) {
                ++L.skipped;
                continue;
            }
            const RVec y = map(x);
            const RMat J = map.jacobian(x);
            const long m = (y.size() - 1) / 2;
            // Source form dt - alpha.
            ContactPoint src{z, ts[it]};
            const RVec w = contact_form(src).coeff;
            // Target form coefficients at the image point.
            RVec wt(y.size());
            if (map.target_form == ContactFormKind::StandardDtMinusAlpha) {
                ContactPoint img{to_complex(RVec(y.head(2 * m))), y[2 * m]};
                wt = contact_form(img).coeff;
            } else {  // du - p dq
                wt.setZero();
                for (long j = 0; j < m; ++j) wt[m + j] = -y[j];
                wt[2 * m] = 1.0;
            }
            const RVec u = J.transpose() * wt;
            const double c = u.dot(w) / w.dot(w);
            const double denom = std::max(u.norm(), 1e-300);
            const double res = (u - c * w).norm() / denom;
            L.max_res = std::max(L.max_res, res);
            L.min_c = std::min(L.min_c, c);
            L.max_c = std::max(L.max_c, c);
            ++L.evaluated;
            // Margin combines both pass conditions.
            L.margin.update(std::min(tol - res, c), idx);
        }
    });

    ConformalCheckResult out;
    MinWitness m;
    out.min_factor = std::numeric_limits<double>::infinity();
    out.max_factor = -std::numeric_limits<double>::infinity();
    long skipped = 0, evaluated = 0;
    for (const auto& L : locals) {
        m.merge(L.margin);
        out.max_residual = std::max(out.max_residual, L.max_res);
        out.min_factor = std::min(out.min_factor, L.min_c);
        out.max_factor = std::max(out.max_factor, L.max_c);
        skipped += L.skipped;
        evaluated += L.evaluated;
    }
    BoundReport r;
    r.quantity = name + ": min(tol - residual, factor)";
    r.anchor = anchor;
    r.min_value = m.value;
    if (m.index >= 0) {
        const long it = m.index % nt;
        const long ip = (m.index / nt) % np;
        const long is = m.index / (nt * np);
        r.witness = to_real(CVec(radii[is] * sph[ip]));
        r.witness_t = ts[it];
    }
    r.grid = grid.info();
    r.tolerance = tol;
    r.evaluated = evaluated;
    r.skipped = skipped;
    r.pass = evaluated > 0 && m.value > 0;
    out.report = std::move(r);
    return out;
}

double symplectic_residual(const RMat& J) {
    const long n2 = J.rows();
    const long n = n2 / 2;
    RMat Omega = RMat::Zero(n2, n2);
    Omega.topRightCorner(n, n) = RMat::Identity(n, n);
    Omega.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
    return (J.transpose() * Omega * J - Omega).norm();
}

}  // namespace cf
