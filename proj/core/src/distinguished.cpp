#include "contactforge/distinguished.hpp"

#include <cmath>
#include <stdexcept>

namespace cf {

ShiftParams choose_shift_params(int n) {
    if (n < 2) throw std::invalid_argument("choose_shift_params: need n >= 2");
    ShiftParams p;
    p.n = n;
    const double base = 2.0 * n / (2.0 * n + 1.0);
    const double slope = 2.0 * n / (n - 1.0);
    for (int k = 1; k <= 12; ++k) {
        const double nu = std::pow(10.0, -k);
        const double lo = base + nu * slope;
        if (lo < 1.0) {
            p.nu = nu;
            p.window_lo = lo;
            p.window_hi = 1.0;
            p.pi_nu_c_sq = 0.5 * (lo + 1.0);
            p.c = std::sqrt(p.pi_nu_c_sq / (nu * kPi));
            p.lambda_sq = 0.5 * (1.0 + p.pi_nu_c_sq);
            return p;
        }
    }
    throw std::runtime_error("choose_shift_params: no admissible nu found");
}

DistinguishedMap::DistinguishedMap(ShiftParams params, OdeConfig ode)
    : params_(params), ode_(ode) {
    if (params_.n < 2 || !(params_.nu > 0) || !(params_.c > 0))
        throw std::invalid_argument("DistinguishedMap: invalid parameters");
    if (ode_.steps_per_unit < 1)
        throw std::invalid_argument("DistinguishedMap: invalid step count");
}

namespace {
struct Root {
    double x = 0;      // positive root of A x^2 + B x + (C - 1) = 0
    double denom = 0;  // 2 A x + B = sqrt(discriminant) > 0
    double A = 0, B = 0;
};

Root solve_scale(const CVec& z, double nu, double s) {
    Root r;
    const double p1 = z[0].real();
    double tail = 0;
    for (Eigen::Index j = 1; j < z.size(); ++j) tail += std::norm(z[j]);
    r.A = nu * kPi * std::norm(z[0]) + kPi * tail;
    r.B = -2.0 * nu * kPi * p1 * s;
    const double C = nu * kPi * s * s;
    if (!(r.A > 0))
        throw std::domain_error("distinguished map: origin is not in the domain");
    const double disc = r.B * r.B - 4.0 * r.A * (C - 1.0);
    if (!(disc > 0))
        throw std::domain_error("distinguished map: scale equation degenerate "
                                "(pi nu s^2 >= 1?)");
    r.denom = std::sqrt(disc);
    r.x = (-r.B + r.denom) / (2.0 * r.A);
    return r;
}
}  // namespace

double DistinguishedMap::extension_value(const CVec& z, double s) const {
    const Root r = solve_scale(z, params_.nu, s);
    return -z[0].imag() / r.x;
}

CVec DistinguishedMap::shift_field(const CVec& z, double s) const {
    const int n = params_.n;
    const double nu = params_.nu;
    const Root r = solve_scale(z, nu, s);
    const double p1 = z[0].real(), q1 = z[0].imag();
    const double x = r.x, x2 = x * x;

    // F = -q1 / x; dF = -(dq1)/x + (q1/x^2) dx, with the implicit-function
    // derivative dx = -(x^2 dA + x dB) / (2 A x + B) (C has no z-dependence).
    const double qfac = q1 / x2;
    auto dx = [&](double dA, double dB) { return -(x2 * dA + x * dB) / r.denom; };

    CVec out(n);
    // Coordinate z_1: dA/dp1 = 2 nu pi p1, dA/dq1 = 2 nu pi q1, dB/dp1 = -2 nu pi s.
    const double dF_p1 = qfac * dx(2.0 * nu * kPi * p1, -2.0 * nu * kPi * s);
    const double dF_q1 = -1.0 / x + qfac * dx(2.0 * nu * kPi * q1, 0.0);
    // sgrad: pdot = -dF/dq, qdot = +dF/dp.
    out[0] = Cplx(-dF_q1, dF_p1);
    // Tail coordinates rotate: dF/dp_j = qfac * dx(2 pi p_j, 0) etc.
    for (int j = 1; j < n; ++j) {
        const double pj = z[j].real(), qj = z[j].imag();
        const double dF_pj = qfac * dx(2.0 * kPi * pj, 0.0);
        const double dF_qj = qfac * dx(2.0 * kPi * qj, 0.0);
        out[j] = Cplx(-dF_qj, dF_pj);
    }
    return out;
}

// RK4 on the unit sphere with a log-scale companion variable; valid because
// the field is 1-homogeneous.
CVec DistinguishedMap::flow(const CVec& z, double s_from, double s_to) const {
    const double r0 = z.norm();
    if (!(r0 > 0)) throw std::domain_error("distinguished map: zero vector");
    if (s_from == s_to) return z;

    CVec y = z / r0;
    double g = 0.0;
    const double span = std::abs(s_to - s_from);
    const int steps =
        std::max(1, static_cast<int>(std::ceil(span * ode_.steps_per_unit)));
    const double h = (s_to - s_from) / steps;

    auto deriv = [this](const CVec& yv, double s, CVec& yd, double& gd) {
        const CVec X = shift_field(yv, s);
        double dot = 0;
        for (Eigen::Index j = 0; j < yv.size(); ++j)
            dot += X[j].real() * yv[j].real() + X[j].imag() * yv[j].imag();
        const double y2 = yv.squaredNorm();
        gd = dot / y2;
        yd = X - gd * yv;
    };

    CVec k1, k2, k3, k4;
    double g1, g2, g3, g4;
    for (int i = 0; i < steps; ++i) {
        const double s = s_from + i * h;
        deriv(y, s, k1, g1);
        deriv(y + 0.5 * h * k1, s + 0.5 * h, k2, g2);
        deriv(y + 0.5 * h * k2, s + 0.5 * h, k3, g3);
        deriv(y + h * k3, s + h, k4, g4);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        g += (h / 6.0) * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
        const double yn = y.norm();
        g += std::log(yn);
        y /= yn;
    }
    return (r0 * std::exp(g)) * y;
}

CVec DistinguishedMap::apply(const CVec& z, double sigma) const {
    return flow(z, 0.0, sigma * params_.c);
}

CVec DistinguishedMap::apply_inverse(const CVec& z, double sigma) const {
    return flow(z, sigma * params_.c, 0.0);
}

DistinguishedMap::Diagnostics DistinguishedMap::diagnose(const SamplingGrid& grid,
                                                         int sample_cap) const {
    Diagnostics d;
    const auto sphere = grid.sphere();
    const int m = std::min<int>(sample_cap, static_cast<int>(sphere.size()));
    DistinguishedMap fine(params_, OdeConfig{2 * ode_.steps_per_unit});
    for (int i = 0; i < m; ++i) {
        const CVec& x = sphere[i];
        const CVec ax = apply(x);
        const auto ri_in = radial_invariants(x);
        const auto ri_out = radial_invariants(ax);
        d.first_integral_drift =
            std::max(d.first_integral_drift, std::abs(ri_out.varrho - ri_in.varrho));
        d.richardson_err = std::max(d.richardson_err, (fine.apply(x) - ax).norm());
        const CVec a2x = apply(2.0 * x);
        d.equivariance_err =
            std::max(d.equivariance_err, (a2x - 2.0 * ax).norm() / a2x.norm());
        d.roundtrip_err = std::max(d.roundtrip_err, (apply_inverse(ax) - x).norm());
    }
    return d;
}

nlohmann::json flow_cache_to_json(const DistinguishedMap& map,
                                  const SamplingGrid& grid, int samples) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["kind"] = "distinguished-flow-cache";
    const auto& p = map.params();
    j["params"] = {{"n", p.n}, {"nu", p.nu}, {"c", p.c}};
    j["steps_per_unit"] = map.ode().steps_per_unit;
    const auto sphere = grid.sphere();
    const int m = std::min<int>(samples, static_cast<int>(sphere.size()));
    nlohmann::json traj = nlohmann::json::array();
    for (int i = 0; i < m; ++i) {
        const CVec& x = sphere[i];
        const CVec ax = map.apply(x);
        nlohmann::json rec;
        auto pack = [](const CVec& v) {
            std::vector<double> out;
            for (Eigen::Index k = 0; k < v.size(); ++k) {
                out.push_back(v[k].real());
                out.push_back(v[k].imag());
            }
            return out;
        };
        rec["input"] = pack(x);
        rec["image"] = pack(ax);
        traj.push_back(std::move(rec));
    }
    j["trajectories"] = std::move(traj);
    return j;
}

bool verify_flow_cache(const DistinguishedMap& map, const nlohmann::json& cache,
                       double tol) {
    try {
        if (cache.at("kind") != "distinguished-flow-cache") return false;
        const auto& p = map.params();
        const auto& cp = cache.at("params");
        if (cp.at("n").get<int>() != p.n) return false;
        if (std::abs(cp.at("nu").get<double>() - p.nu) > 1e-15) return false;
        if (std::abs(cp.at("c").get<double>() - p.c) > 1e-12) return false;
        for (const auto& rec : cache.at("trajectories")) {
            const auto in = rec.at("input").get<std::vector<double>>();
            const auto im = rec.at("image").get<std::vector<double>>();
            if (in.size() != im.size() || in.size() % 2 != 0) return false;
            CVec x(in.size() / 2);
            for (size_t k = 0; k < in.size() / 2; ++k)
                x[static_cast<Eigen::Index>(k)] = Cplx(in[2 * k], in[2 * k + 1]);
            const CVec ax = map.apply(x);
            for (size_t k = 0; k < im.size() / 2; ++k) {
                const Cplx want(im[2 * k], im[2 * k + 1]);
                if (std::abs(ax[static_cast<Eigen::Index>(k)] - want) > tol)
                    return false;
            }
        }
        return true;
    } catch (const nlohmann::json::exception&) {
        return false;
    }
}

BoundReport wedge_inclusion_check(const DistinguishedMap& map,
                                  const SamplingGrid& grid) {
    BoundReport r;
    r.quantity = "wedge-margin";
    r.anchor = "shift-image-in-wedge";
    r.grid = grid.info();
    r.tolerance = 0;
    const int n = map.params().n;
    const auto sphere = grid.sphere();
    MinWitness mw;
    long idx = 0;
    for (const auto& x : sphere) {
        // Unit-capacity sphere {rho = 1}: |z| = 1/sqrt(pi).
        const CVec z = x / std::sqrt(kPi);
        const auto ri = radial_invariants(map.apply(z));
        mw.update(1.0 - ((2.0 * n + 1.0) * ri.varrho - (n - 1.0) * ri.rho[0]),
                  idx++);
        ++r.evaluated;
    }
    r.min_value = mw.value;
    if (mw.index >= 0) r.witness = to_real(sphere[mw.index] / std::sqrt(kPi));
    r.pass = r.evaluated > 0 && mw.value > 0.0;
    return r;
}

// ---------------------------------------------------------------------------
// Main loop
// ---------------------------------------------------------------------------

namespace {
double rho_total(const CVec& z) { return kPi * z.squaredNorm(); }
}  // namespace

MainLoop build_main_loop(int n, OdeConfig ode) {
    MainLoop L;
    L.n = n;
    L.a = std::make_shared<DistinguishedMap>(choose_shift_params(n), ode);
    L.cat = make_unitary_generators(n);
    auto a = L.a;
    const auto f_s = L.cat.f_s;  // by-value copies for lambda capture
    const auto fmat = L.cat.f.matrix;
    const auto emat = L.cat.e.matrix;
    if (!f_s.hamiltonian || !f_s.matrix)
        throw std::logic_error("build_main_loop: f^{(s)} lacks generator data");
    const auto Fs = *f_s.hamiltonian;  // F^{(s)}(z, t)
    const auto fs_mat = f_s.matrix;

    // The loop phi_t = e_{-t} f_{3t} a e_t a^{-1}.
    PathFamily phi;
    phi.n = n;
    phi.is_loop = true;
    phi.is_equivariant = true;
    phi.fwd = [a, fmat, emat](double t, double, const CVec& z) {
        CVec w = a->apply_inverse(z);
        w = emat(t, 1.0) * w;
        w = a->apply(w);
        w = fmat(3.0 * t, 1.0) * w;
        return CVec(emat(-t, 1.0) * w);
    };
    phi.inv = [a, fmat, emat](double t, double, const CVec& z) {
        CVec w = emat(t, 1.0) * z;
        w = fmat(-3.0 * t, 1.0) * w;
        w = a->apply_inverse(w);
        w = emat(-t, 1.0) * w;
        return CVec(a->apply(w));
    };
    L.phi = phi;

    // G(z,t) = F(z) + rho(a^{-1} f_t^{-1} z), F = (n-1) rho_1 - varrho.
    auto G_full = [a, fmat, n](const CVec& z, double t) -> double {
        const auto ri = radial_invariants(z);
        const double F = (n - 1.0) * ri.rho[0] - ri.varrho;
        const CVec w = fmat(-t, 1.0) * z;
        return F + rho_total(a->apply_inverse(w));
    };

    HamiltonianField G_s;
    G_s.homogeneous = true;
    G_s.eval = [a, Fs, fs_mat](const CVec& z, double t, double s) -> double {
        const CMat M = fs_mat(t, s);
        const CVec w = M.inverse() * z;
        return Fs.eval(z, t, s) + rho_total(a->apply_inverse(w));
    };
    L.G_s = G_s;

    HamiltonianField H_s;
    H_s.homogeneous = true;
    H_s.eval = [Fs, fs_mat, G_full](const CVec& z, double t, double s) -> double {
        const CMat M = fs_mat(2.0 * t, s);
        const CVec w = M.inverse() * z;
        return 2.0 * Fs.eval(z, 2.0 * t, s) + G_full(w, t);
    };
    L.H_s = H_s;

    HamiltonianField Phi;
    Phi.homogeneous = true;
    Phi.eval = [H_s, emat](const CVec& z, double t, double) -> double {
        const CVec w = emat(t, 1.0) * z;
        return -rho_total(z) + H_s.eval(w, t, 1.0);
    };
    L.Phi = Phi;

    HamiltonianField stage1;
    stage1.homogeneous = true;
    stage1.eval = [H_s, emat](const CVec& z, double t, double s) -> double {
        const CVec w = emat(t, 1.0) * z;
        return -rho_total(z) + H_s.eval(w, t, s);
    };
    L.stage1 = stage1;

    HamiltonianField stage2;
    stage2.homogeneous = true;
    stage2.eval = [G_s, emat](const CVec& z, double t, double s) -> double {
        const CVec w = emat(t, 1.0) * z;
        return -rho_total(z) + G_s.eval(w, t, s);
    };
    L.stage2 = stage2;

    HamiltonianField stage3;
    stage3.homogeneous = true;
    stage3.eval = [a, emat](const CVec& z, double t, double s) -> double {
        const CVec w = emat(t, 1.0) * z;
        return -rho_total(z) + rho_total(a->apply_inverse(w, s));
    };
    L.stage3 = stage3;

    return L;
}

MainLoopChecks verify_main_loop(const MainLoop& loop, const SamplingGrid& grid) {
    MainLoopChecks out;
    const int n = loop.n;

    // Enrich the sphere directions with a(x)/|a(x)|: the defect minimizers of
    // stage 3 concentrate near images of {z_1 = 0} points under a.
    std::vector<CVec> sphere = grid.sphere();
    {
        const size_t base = sphere.size();
        sphere.reserve(2 * base);
        for (size_t i = 0; i < base; ++i) {
            CVec y = loop.a->apply(sphere[i]);
            sphere.push_back(y / y.norm());
        }
    }
    const auto times = grid.times();
    const auto svals = grid.s_values();

    auto sweep = [&](const HamiltonianField& H, bool use_s, double lower,
                     const std::string& name, const std::string& anchor) {
        BoundReport r;
        r.quantity = name;
        r.anchor = anchor;
        r.grid = grid.info();
        r.tolerance = 0;
        const std::vector<double> sv =
            use_s ? svals : std::vector<double>{1.0};
        const long total = static_cast<long>(sphere.size());
        std::vector<MinWitness> locals(std::max(1, thread_count()));
        std::vector<long> counts(locals.size(), 0);
        parallel_chunks(total, [&](long b, long e, int chunk) {
            MinWitness mw;
            long cnt = 0;
            for (long ip = b; ip < e; ++ip)
                for (size_t it = 0; it < times.size(); ++it)
                    for (size_t is = 0; is < sv.size(); ++is) {
                        const CVec& x = sphere[ip];
                        const double val =
                            H.eval(x, times[it], sv[is]) / rho_total(x) - lower;
                        mw.update(val,
                                  ((ip * static_cast<long>(times.size()) + it) *
                                   static_cast<long>(sv.size())) +
                                      static_cast<long>(is));
                        ++cnt;
                    }
            locals[chunk] = mw;
            counts[chunk] = cnt;
        }, nullptr);
        MinWitness mw;
        for (size_t i = 0; i < locals.size(); ++i) {
            mw.merge(locals[i]);
            r.evaluated += counts[i];
        }
        r.min_value = mw.value;
        if (mw.index >= 0) {
            const long nsv = static_cast<long>(sv.size());
            const long nt = static_cast<long>(times.size());
            const long is = mw.index % nsv;
            const long it = (mw.index / nsv) % nt;
            const long ip = mw.index / (nsv * nt);
            r.witness = to_real(sphere[ip]);
            r.witness_t = times[it];
            r.witness_s = sv[is];
        }
        r.pass = r.evaluated > 0 && mw.value > 0.0;
        return r;
    };

    out.phi_lower = sweep(loop.Phi, false, (2.0 * n - 3.0) - 1e-3,
                          "phi-over-rho-margin", "loop-hamiltonian-lower-bound");
    out.g_positive = sweep(loop.G_s, true, 0.0, "gs-over-rho",
                           "stage-two-hamiltonian-nonnegative");
    out.h_positive = sweep(loop.H_s, true, 0.0, "hs-over-rho",
                           "stage-one-hamiltonian-nonnegative");
    out.wedge = wedge_inclusion_check(*loop.a, grid);

    {  // Loop closure: phi_1 = phi_0 = id, up to the ODE roundtrip tolerance.
        BoundReport r;
        r.quantity = "closure-margin";
        r.anchor = "loop-closes";
        r.grid = grid.info();
        r.tolerance = 1e-5;
        MinWitness mw;
        long idx = 0;
        const int m = std::min<int>(32, static_cast<int>(grid.sphere().size()));
        const auto base = grid.sphere();
        for (int i = 0; i < m; ++i) {
            const double dev1 = (loop.phi.fwd(1.0, 1.0, base[i]) - base[i]).norm();
            const double dev0 = (loop.phi.fwd(0.0, 1.0, base[i]) - base[i]).norm();
            mw.update(r.tolerance - std::max(dev0, dev1), idx++);
            ++r.evaluated;
        }
        r.min_value = mw.value;
        r.pass = r.evaluated > 0 && mw.value >= 0.0;
        out.closure = r;
    }

    {  // mu-hat over the three stages, with the enriched point set.
        MuEstimate mu;
        mu.grid = grid.info();
        MinWitness global;
        struct Stage {
            const char* name;
            const HamiltonianField* H;
        } stages[] = {{"stage1", &loop.stage1},
                      {"stage2", &loop.stage2},
                      {"stage3", &loop.stage3}};
        long offset = 0;
        for (const auto& st : stages) {
            // lower = 0 makes sweep return the raw min of (stage / rho).
            BoundReport r = sweep(*st.H, true, 0.0, st.name, "stage-ratio");
            const double raw = r.min_value;
            mu.stage_minima.emplace_back(st.name, raw);
            MinWitness mw;
            mw.update(raw, offset);
            global.merge(mw);
            if (raw == global.value) {
                mu.witness = r.witness;
                mu.witness_t = r.witness_t;
                mu.witness_s = r.witness_s;
            }
            ++offset;
        }
        mu.mu_hat = -global.value;
        out.mu = mu;
    }

    out.pass = out.phi_lower.pass && out.g_positive.pass && out.h_positive.pass &&
               out.wedge.pass && out.closure.pass && out.mu.mu_hat >= 0.8 &&
               out.mu.mu_hat <= 1.05;
    return out;
}

}  // namespace cf
