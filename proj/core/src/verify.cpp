#include "contactforge/verify.hpp"

#include <cmath>

namespace cf {

namespace {

struct SweepLocal {
    MinWitness min;
    long evaluated = 0, skipped = 0;
};

}  // namespace

BoundReport positivity_check(const HamiltonianField& H, const SamplingGrid& grid,
                             double margin, const std::string& name,
                             const std::string& anchor) {
    const auto radii = grid.shell_radii();
    const auto sph = grid.sphere();
    const auto ts = grid.times();
    const long nt = static_cast<long>(ts.size());
    const long np = static_cast<long>(sph.size());
    const long total = static_cast<long>(radii.size()) * np * nt;

    std::vector<SweepLocal> locals(std::max(1, thread_count()));
    parallel_chunks(total, [&](long b, long e, int chunk) {
        SweepLocal& L = locals[chunk];
        for (long idx = b; idx < e; ++idx) {
            const long it = idx % nt;
            const long ip = (idx / nt) % np;
            const long is = idx / (nt * np);
            const CVec z = radii[is] * sph[ip];
            try {
                const double rho = kPi * z.squaredNorm();
                L.min.update(H(z, ts[it]) - margin * rho, idx);
                ++L.evaluated;
            } catch (const std::exception&) {
                ++L.skipped;
            }
        }
    });
    SweepLocal acc;
    for (const auto& L : locals) {
        acc.min.merge(L.min);
        acc.evaluated += L.evaluated;
        acc.skipped += L.skipped;
    }
    BoundReport r;
    r.quantity = name + " - margin*pi|z|^2";
    r.anchor = anchor;
    r.min_value = acc.min.value;
    if (acc.min.index >= 0) {
        const long it = acc.min.index % nt;
        const long ip = (acc.min.index / nt) % np;
        const long is = acc.min.index / (nt * np);
        r.witness = to_real(CVec(radii[is] * sph[ip]));
        r.witness_t = ts[it];
    }
    r.grid = grid.info();
    r.tolerance = margin;
    r.evaluated = acc.evaluated;
    r.skipped = acc.skipped;
    r.pass = acc.evaluated > 0 && acc.min.value > 0;
    return r;
}

MuEstimate mu_estimate(const HamiltonianField& Fs, const SamplingGrid& grid) {
    const auto radii = grid.shell_radii();
    const auto sph = grid.sphere();
    const auto ts = grid.times();
    const auto ss = grid.s_values();
    const long nt = static_cast<long>(ts.size());
    const long np = static_cast<long>(sph.size());
    const long ns = static_cast<long>(ss.size());
    const long total = static_cast<long>(radii.size()) * np * nt * ns;

    std::vector<MinWitness> locals(std::max(1, thread_count()));
    parallel_chunks(total, [&](long b, long e, int chunk) {
        MinWitness& L = locals[chunk];
        for (long idx = b; idx < e; ++idx) {
            const long is_s = idx % ns;
            const long it = (idx / ns) % nt;
            const long ip = (idx / (ns * nt)) % np;
            const long ish = idx / (ns * nt * np);
            const CVec z = radii[ish] * sph[ip];
            const double rho = kPi * z.squaredNorm();
            L.update(Fs(z, ts[it], ss[is_s]) / rho, idx);
        }
    });
    MinWitness m;
    for (const auto& L : locals) m.merge(L);
    MuEstimate out;
    out.mu_hat = -m.value;
    if (m.index >= 0) {
        const long is_s = m.index % ns;
        const long it = (m.index / ns) % nt;
        const long ip = (m.index / (ns * nt)) % np;
        const long ish = m.index / (ns * nt * np);
        out.witness = to_real(CVec(radii[ish] * sph[ip]));
        out.witness_t = ts[it];
        out.witness_s = ss[is_s];
    }
    out.grid = grid.info();
    return out;
}

BoundReport fundamental_inequality_check(int n, const SamplingGrid& grid, double tol) {
    if (n < 2) throw std::invalid_argument("fundamental_inequality_check: n >= 2");
    SamplingGrid g = grid;
    g.n = n;
    const auto radii = g.shell_radii();
    const auto sph = g.sphere();
    const auto ts = g.times();
    const auto ss = g.s_values();
    const long nt = static_cast<long>(ts.size());
    const long ns = static_cast<long>(ss.size());
    const long np = static_cast<long>(sph.size());
    const long nsh = static_cast<long>(radii.size());
    const PathFamily fs = path_f_s(n, n);
    const double dt = 1e-5;

    // One matrix pair per (t,s) cell, shared by all z samples in the cell.
    const long cells = nt * ns;
    std::vector<MinWitness> locals(std::max(1, thread_count()));
    parallel_chunks(cells, [&](long b, long e, int chunk) {
        MinWitness& L = locals[chunk];
        for (long cell = b; cell < e; ++cell) {
            const long it = cell / ns, is_s = cell % ns;
            const double t = ts[it], s = ss[is_s];
            const CMat A = fs.matrix(t, s);
            const CMat Adot = (fs.matrix(t + dt, s) - fs.matrix(t - dt, s)) / (2 * dt);
            for (long ip = 0; ip < np; ++ip) {
                for (long ish = 0; ish < nsh; ++ish) {
                    const CVec z = radii[ish] * sph[ip];
                    const auto ri = radial_invariants(z);
                    // F^(s)(f^(s)_t z, t) = alpha_{Az}(Adot z).
                    const double F = liouville_pair(CVec(A * z), CVec(Adot * z));
                    const double q = F + ri.varrho + tol * (1.0 + ri.total);
                    L.update(q, ((cell * np) + ip) * nsh + ish);
                }
            }
        }
    });
    MinWitness m;
    for (const auto& L : locals) m.merge(L);
    BoundReport r;
    r.quantity = "F^(s)(f^(s)_t z, t) + varrho(z) + tol*(1+rho(z))";
    r.anchor = "fundamental-inequality";
    r.min_value = m.value;
    if (m.index >= 0) {
        const long ish = m.index % nsh;
        const long ip = (m.index / nsh) % np;
        const long cell = m.index / (nsh * np);
        r.witness = to_real(CVec(radii[ish] * sph[ip]));
        r.witness_t = ts[cell / ns];
        r.witness_s = ss[cell % ns];
    }
    r.grid = g.info();
    r.tolerance = tol;
    r.evaluated = nsh * np * nt * ns;
    r.pass = m.value >= 0;
    return r;
}

PipelineResult squeeze_pipeline_check(int n, const std::vector<CVec>& K,
                                      const SamplingGrid& grid, double tol) {
    if (n < 2) throw std::invalid_argument("squeeze_pipeline_check: n >= 2");
    auto [Phi, Psi] = make_squeeze_pair(n);

    auto in_wedge = [n](const CVec& z) {
        // W = {(n+1)rho_2 + n rho_3 + ... + n rho_n - rho_1 < 1}
        const auto ri = radial_invariants(z);
        double w = (n + 1) * ri.rho[1] - ri.rho[0];
        for (int j = 2; j < n; ++j) w += n * ri.rho[j];
        return w < 1.0;
    };

    PipelineResult out;
    double c = 2.0;
    for (;; c *= 1.5, ++out.enlargements) {
        bool ok = true;
        for (const auto& z : K) {
            const auto ri = radial_invariants(z);
            if (!(ri.rho[1] < 1.0))
                throw std::invalid_argument(
                    "squeeze_pipeline_check: sample outside the cylinder rho_2 < 1");
            CVec y = z;
            y[0] += c;
            if (!in_wedge(y)) {
                ok = false;
                break;
            }
        }
        if (ok) break;
        if (out.enlargements > 200)
            throw std::runtime_error("squeeze_pipeline_check: cannot shift K into the wedge");
    }
    out.shift_used = c;

    auto apply_v = [n](const SmoothMap& m, const CVec& z, double t) {
        RVec x(2 * n + 1);
        x.head(2 * n) = to_real(z);
        x[2 * n] = t;
        if (!m.in_domain(x))
            throw std::domain_error("squeeze_pipeline_check: guard violation");
        return to_complex(RVec(m(x).head(2 * n)));
    };

    const auto ts = grid.times();
    MinWitness m;
    long idx = 0, skipped = 0;
    for (const auto& z : K) {
        for (double t : ts) {
            try {
                CVec y = z;
                y[0] += c;                      // Y
                const CVec w = apply_v(Psi, y, t);  // Psi
                const auto rw = radial_invariants(w);
                m.update(1.0 / n - rw.varrho, idx);     // membership in D
                const CVec u = apply_v(Phi, w, t);  // Phi
                const auto ru = radial_invariants(u);
                m.update(1.0 / (n - 1) + tol - ru.total, idx + 1);
            } catch (const std::exception&) {
                ++skipped;
            }
            idx += 2;
        }
    }
    BoundReport r;
    r.quantity = "min(1/n - varrho(Psi Y z), 1/(n-1) + tol - rho(Phi Psi Y z))";
    r.anchor = "cylinder-squeeze-pipeline";
    r.min_value = m.value;
    r.grid = grid.info();
    r.tolerance = tol;
    r.evaluated = idx - skipped;
    r.skipped = skipped;
    r.pass = m.value > 0 && skipped == 0;
    out.report = std::move(r);
    return out;
}

}  // namespace cf
