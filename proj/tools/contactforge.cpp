// contactforge: command-line front end for the verification library.
//
// Every subcommand reads a flat dotted-key configuration (file via --config,
// overrides via --set key=value), runs one verification, and emits a single
// canonical JSON report on stdout (or --out). Reports contain no volatile
// fields; wall-clock time goes to stderr. Exit codes: 0 = all checks passed,
// 1 = a check failed, 2 = usage/configuration/runtime error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "contactforge/distinguished.hpp"
#include "contactforge/index.hpp"
#include "contactforge/maps.hpp"
#include "contactforge/olshanskii.hpp"
#include "contactforge/profile.hpp"
#include "contactforge/squeeze.hpp"
#include "contactforge/verify.hpp"

namespace {

using json = nlohmann::json;

class Config {
  public:
    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            const auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                if (b == std::string::npos) return std::string();
                const auto e = s.find_last_not_of(" \t\r");
                return s.substr(b, e - b + 1);
            };
            if (trim(line).empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value");
            kv_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
    }
    void set(const std::string& assignment) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--set expects key=value: " + assignment);
        kv_[assignment.substr(0, eq)] = assignment.substr(eq + 1);
    }
    std::string str(const std::string& key, const std::string& dflt) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? dflt : it->second;
    }
    double num(const std::string& key, double dflt) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? dflt : std::stod(it->second);
    }
    long integer(const std::string& key, long dflt) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? dflt : std::stol(it->second);
    }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    std::vector<double> num_list(const std::string& key) const {
        std::vector<double> out;
        const auto it = kv_.find(key);
        if (it == kv_.end()) return out;
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
        return out;
    }
    // FNV-1a over the sorted key=value lines: stable identity of the inputs.
    std::string hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        for (const auto& [k, v] : kv_) {
            for (char c : k + "=" + v + "\n") {
                h ^= static_cast<unsigned char>(c);
                h *= 1099511628211ULL;
            }
        }
        std::ostringstream os;
        os << std::hex << h;
        return os.str();
    }

  private:
    std::map<std::string, std::string> kv_;  // sorted: hash is order-free
};

cf::SamplingGrid grid_from(const Config& cfg) {
    cf::SamplingGrid g;
    g.n = static_cast<int>(cfg.integer("grid.n", 2));
    g.shells = static_cast<int>(cfg.integer("grid.shells", 8));
    g.r_min = cfg.num("grid.r_min", 0.25);
    g.r_max = cfg.num("grid.r_max", 4.0);
    g.sphere_points = static_cast<int>(cfg.integer("grid.sphere_points", 512));
    g.time_samples = static_cast<int>(cfg.integer("grid.time_samples", 64));
    g.s_samples = static_cast<int>(cfg.integer("grid.s_samples", 16));
    g.seed = static_cast<std::uint64_t>(cfg.integer("grid.seed", 0));
    return g;
}

json rat_json(const cf::olsh::Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}
json rat_pair(const std::pair<cf::olsh::Rat, cf::olsh::Rat>& p) {
    return json::array({rat_json(p.first), rat_json(p.second)});
}

struct Outcome {
    json result;
    bool pass = false;
};

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

Outcome run_verify_map(const Config& cfg) {
    const auto grid = grid_from(cfg);
    const std::string which = cfg.str("map.kind", "twist");
    const double tol = cfg.num("map.tol", 1e-8);
    Outcome out;
    if (which == "twist") {
        const int N = static_cast<int>(cfg.integer("map.N", 1));
        const auto r = cf::conformal_factor_check(cf::make_twist(N, grid.n), grid,
                                                  tol, "twist", "twist-map-contact");
        out.result = {{"check", r.report.to_json()},
                      {"max_residual", r.max_residual},
                      {"min_factor", r.min_factor},
                      {"max_factor", r.max_factor}};
        out.pass = r.report.pass;
    } else if (which == "squeeze-phi" || which == "squeeze-psi") {
        auto pair = cf::make_squeeze_pair(grid.n);
        const auto& m = (which == "squeeze-phi") ? pair.first : pair.second;
        const auto r = cf::conformal_factor_check(m, grid, tol, which,
                                                  "squeeze-map-contact");
        out.result = {{"check", r.report.to_json()},
                      {"max_residual", r.max_residual},
                      {"min_factor", r.min_factor},
                      {"max_factor", r.max_factor}};
        out.pass = r.report.pass;
    } else if (which == "planck") {
        const double hbar = cfg.num("map.hbar", 1.0 / (2 * cf::kPi));
        const double h = 2 * cf::kPi * hbar;
        const auto r = cf::conformal_factor_check(cf::make_planck_map(hbar, grid.n),
                                                  grid, tol, "planck",
                                                  "planck-rescale-contact");
        const double factor_dev =
            std::max(std::abs(r.min_factor - h), std::abs(r.max_factor - h));
        out.result = {{"check", r.report.to_json()},
                      {"max_residual", r.max_residual},
                      {"factor_expected", h},
                      {"factor_deviation", factor_dev}};
        out.pass = r.report.pass && factor_dev < cfg.num("map.factor_tol", 1e-10);
    } else {
        throw std::runtime_error("map.kind must be twist|squeeze-phi|squeeze-psi|planck");
    }
    return out;
}

cf::PathFamily loop_from(const Config& cfg, int n) {
    const std::string kind = cfg.str("loop.kind", "e");
    if (kind == "e") return cf::path_e(n);
    if (kind == "f") return cf::path_f(n);
    if (kind == "g") return cf::path_g(n);
    if (kind == "b") return cf::path_b(n, static_cast<int>(cfg.integer("loop.j", 1)));
    if (kind == "f_s") return cf::path_f_s(n, n);
    if (kind == "diag") return cf::diag_phase_path(n, cfg.num_list("loop.phases"));
    throw std::runtime_error("loop.kind must be e|f|g|b|f_s|diag");
}

Outcome run_verify_loop(const Config& cfg) {
    const auto grid = grid_from(cfg);
    auto loop = loop_from(cfg, grid.n);
    const auto H = loop.hamiltonian ? *loop.hamiltonian
                                    : cf::extract_hamiltonian(loop);
    const double margin = cfg.num("loop.margin", -1e18);
    auto rep = cf::positivity_check(H, grid, margin, cfg.str("loop.kind", "e"),
                                    "loop-hamiltonian-positivity");

    // Closure and generator consistency (extracted vs closed form).
    double closure = 0, ham_dev = 0;
    const auto sphere = grid.sphere();
    const auto extracted = cf::extract_hamiltonian(loop);
    const int m = std::min<int>(16, static_cast<int>(sphere.size()));
    for (int i = 0; i < m; ++i) {
        if (loop.is_loop)
            closure = std::max(closure,
                               (loop.apply(1.0, sphere[i]) - sphere[i]).norm());
        for (double t : {0.1, 0.35, 0.8})
            ham_dev = std::max(ham_dev, std::abs(extracted(sphere[i], t, 1.0) -
                                                 H(sphere[i], t, 1.0)));
    }
    Outcome out;
    out.result = {{"positivity", rep.to_json()},
                  {"closure_deviation", closure},
                  {"hamiltonian_consistency", ham_dev}};
    out.pass = rep.pass && closure < 1e-9 && ham_dev < 1e-4;
    return out;
}

Outcome run_s3_loop(const Config& cfg) {
    const double alpha = cfg.num("s3.alpha", 0.05);
    auto grid = grid_from(cfg);
    grid.n = 2;
    const auto pu = cf::make_pu21(alpha);
    auto loop = cf::make_s3_loop(alpha);
    const auto H = cf::extract_hamiltonian(loop);
    auto rep = cf::positivity_check(H, grid, 0.0, "s3-loop",
                                    "positive-loop-on-three-sphere");
    double closure = 0;
    const auto sphere = grid.sphere();
    for (int i = 0; i < std::min<int>(16, static_cast<int>(sphere.size())); ++i)
        closure = std::max(closure, (loop.apply(1.0, sphere[i]) - sphere[i]).norm());
    Outcome out;
    out.result = {{"alpha", alpha},
                  {"dilation_s", pu.dilation_s},
                  {"dilation_residual", pu.dilation_residual},
                  {"positivity", rep.to_json()},
                  {"closure_deviation", closure}};
    out.pass = rep.pass && closure < 1e-6 && pu.dilation_residual < 1e-8;
    return out;
}

cf::MainLoop build_loop_from(const Config& cfg, const cf::SamplingGrid& grid) {
    cf::OdeConfig ode;
    ode.steps_per_unit = static_cast<int>(cfg.integer("mainloop.steps_per_unit", 512));
    return cf::build_main_loop(grid.n, ode);
}

Outcome run_main_loop(const Config& cfg, bool mu_only) {
    auto grid = grid_from(cfg);
    // The stage Hamiltonians are 1-homogeneous: one shell suffices.
    grid.shells = 1;
    grid.r_min = grid.r_max = 1.0;
    if (!cfg.has("grid.sphere_points")) grid.sphere_points = 96;
    if (!cfg.has("grid.time_samples")) grid.time_samples = 12;
    if (!cfg.has("grid.s_samples")) grid.s_samples = 6;
    const auto loop = build_loop_from(cfg, grid);
    const auto checks = cf::verify_main_loop(loop, grid);
    Outcome out;
    if (mu_only) {
        out.result = {{"mu", checks.mu.to_json()}};
        out.pass = checks.mu.mu_hat >= 0.8 && checks.mu.mu_hat <= 1.05;
        return out;
    }
    const auto diag = loop.a->diagnose(grid, 8);
    json cache_status = nullptr;
    if (cfg.has("mainloop.cache")) {
        const std::string path = cfg.str("mainloop.cache", "");
        std::ifstream in(path);
        if (in) {
            json cache = json::parse(in);
            cache_status = cf::verify_flow_cache(*loop.a, cache) ? "verified"
                                                                 : "mismatch";
        } else {
            std::ofstream outf(path);
            outf << cf::flow_cache_to_json(*loop.a, grid).dump(2) << "\n";
            cache_status = "written";
        }
    }
    out.result = {{"shift", {{"n", loop.a->params().n},
                             {"nu", loop.a->params().nu},
                             {"c", loop.a->params().c},
                             {"pi_nu_c_sq", loop.a->params().pi_nu_c_sq}}},
                  {"phi_lower", checks.phi_lower.to_json()},
                  {"g_positive", checks.g_positive.to_json()},
                  {"h_positive", checks.h_positive.to_json()},
                  {"closure", checks.closure.to_json()},
                  {"wedge", checks.wedge.to_json()},
                  {"mu", checks.mu.to_json()},
                  {"ode", {{"first_integral_drift", diag.first_integral_drift},
                           {"richardson_err", diag.richardson_err},
                           {"equivariance_err", diag.equivariance_err},
                           {"roundtrip_err", diag.roundtrip_err}}},
                  {"cache", cache_status}};
    out.pass = checks.pass && (cache_status.is_null() || cache_status != "mismatch");
    return out;
}

Outcome run_fundamental(const Config& cfg) {
    const auto grid = grid_from(cfg);
    auto rep = cf::fundamental_inequality_check(
        grid.n, grid, cfg.num("fundamental.tol", 1e-6));
    return {{{"check", rep.to_json()}}, rep.pass};
}

Outcome run_squeeze_verdict(const Config& cfg) {
    std::optional<double> R3;
    if (cfg.has("squeeze.R3")) R3 = cfg.num("squeeze.R3", 0);
    const auto v = cf::squeezing_verdict(
        static_cast<int>(cfg.integer("squeeze.n", 2)), cfg.num("squeeze.R1", 0.5),
        cfg.num("squeeze.R2", 0.5),
        cfg.str("squeeze.target", "cylinder") == "ball"
            ? cf::SqueezeTarget::ball
            : cf::SqueezeTarget::cylinder,
        R3);
    json j = {{"branch", v.branch}};
    if (v.m) j["m"] = v.m;
    if (v.k) j["k"] = v.k;
    if (v.branch == "restricted-window")
        j["window"] = {v.window_lo, v.window_hi};
    return {{{"verdict", j}}, true};  // a verdict is an answer, not a failure
}

Outcome run_squeeze_plan(const Config& cfg) {
    const auto plan =
        cf::iteration_plan(cfg.num("squeeze.R1", 0.9), cfg.num("squeeze.R2", 0.1),
                           cfg.num("squeeze.gamma", 1.0));
    return {{{"N", plan.N}, {"trajectory", plan.trajectory}}, true};
}

Outcome run_pipeline(const Config& cfg) {
    auto grid = grid_from(cfg);
    // Sample set K: grid points inside the cylinder {rho_2 < 1}.
    std::vector<cf::CVec> K;
    const long cap = cfg.integer("pipeline.max_points", 2000);
    for (double r : grid.shell_radii()) {
        for (const auto& x : grid.sphere()) {
            cf::CVec z = r * x;
            if (cf::radial_invariants(z).rho[1] < 1.0) K.push_back(z);
            if (static_cast<long>(K.size()) >= cap) break;
        }
        if (static_cast<long>(K.size()) >= cap) break;
    }
    const auto res =
        cf::squeeze_pipeline_check(grid.n, K, grid, cfg.num("pipeline.tol", 1e-9));
    return {{{"check", res.report.to_json()},
             {"shift_used", res.shift_used},
             {"enlargements", res.enlargements},
             {"points", static_cast<long>(K.size())}},
            res.report.pass};
}

Outcome run_cz(const Config& cfg) {
    Outcome out;
    if (cfg.has("cz.exponents")) {
        const auto a = cfg.num_list("cz.exponents");
        const auto path = cf::unitary_diag_path(static_cast<int>(a.size()), a);
        const auto res = cf::cz_index(path);
        const int oracle = cf::cz_unitary_oracle(a);
        json crossings = json::array();
        for (const auto& c : res.crossings)
            crossings.push_back(
                {{"t", c.t}, {"kernel_dim", c.kernel_dim}, {"signature", c.signature}});
        out.result = {{"cz", res.cz},
                      {"mu_rs", res.mu_rs},
                      {"crossings", crossings},
                      {"oracle", oracle}};
        out.pass = res.cz == oracle;
        return out;
    }
    const int n = static_cast<int>(cfg.integer("ellipsoid.n", 2));
    const int N = static_cast<int>(cfg.integer("ellipsoid.N", 2));
    const double R = cfg.num("ellipsoid.R", 0.45);
    const int k = cf::ellipsoid_degree(n, N, R);
    // Model path: floor-shifted exponents with fixed generic offsets.
    std::vector<double> a(n);
    a[0] = std::floor(1.0 / R) + 0.37;
    for (int j = 1; j < n; ++j) a[j] = std::floor(1.0 / (N * R)) + 0.61;
    const auto res = cf::cz_index(cf::unitary_diag_path(n, a));
    out.result = {{"degree_formula", k}, {"model_path_cz", cf::cz_unitary_oracle(a)},
                  {"engine_cz", res.cz}};
    out.pass = res.cz == cf::cz_unitary_oracle(a);
    return out;
}

Outcome run_ch_ellipsoid(const Config& cfg) {
    const auto g = cf::ch_ellipsoid(static_cast<int>(cfg.integer("ellipsoid.n", 2)),
                                    static_cast<int>(cfg.integer("ellipsoid.N", 2)),
                                    cfg.num("ellipsoid.R", 0.45));
    const bool iso = cf::ball_inclusion_iso(cfg.num("ellipsoid.R1", 0.6),
                                            cfg.num("ellipsoid.R2", 0.7));
    return {{{"degree", g.degree}, {"group", g.group}, {"ball_inclusion_iso", iso}},
            true};
}

Outcome run_spectrum(const Config& cfg) {
    const int n = static_cast<int>(cfg.integer("ellipsoid.n", 2));
    const int N = static_cast<int>(cfg.integer("ellipsoid.N", 2));
    const double R = cfg.num("ellipsoid.R", 0.45);
    const int m_max = static_cast<int>(cfg.integer("spectrum.m_max", 10));
    const auto spec = cf::action_spectrum(N, R, m_max);
    const bool nr = cf::non_resonant(N, R, m_max);
    const bool pa = cf::period_action_check(n, N, R, m_max);
    return {{{"spectrum", spec}, {"non_resonant", nr}, {"period_action_ok", pa}}, pa};
}

Outcome run_profile(const Config& cfg) {
    const double a = cfg.num("profile.a", 0.2), b = cfg.num("profile.b", 0.8),
                 c = cfg.num("profile.c", 2.0);
    const auto F = cf::make_step_profile(a, b, c);
    const auto Fbar = cf::profile_transform(F);
    // Closed form: Fbar_{a,b,c} = F_{a/c, b, 1/c}.
    const auto expect = cf::make_step_profile(a / c, b, 1.0 / c);
    double knot_dev = 0;
    for (size_t k = 0; k < Fbar.u.size(); ++k)
        knot_dev = std::max({knot_dev, std::abs(Fbar.u[k] - expect.u[k]),
                             std::abs(Fbar.h[k] - expect.h[k])});
    const auto Fback = cf::profile_transform(Fbar);
    double invol_dev = 0;
    for (size_t k = 0; k < F.u.size(); ++k)
        invol_dev = std::max({invol_dev, std::abs(Fback.u[k] - F.u[k]),
                              std::abs(Fback.h[k] - F.h[k])});
    return {{{"transform_knots_u", Fbar.u},
             {"transform_knots_h", Fbar.h},
             {"closed_form_deviation", knot_dev},
             {"involution_deviation", invol_dev},
             {"admissible", F.admissible()}},
            knot_dev < 1e-12 && invol_dev < 1e-12 && F.admissible()};
}

Outcome run_olshanskii(const Config&) {
    const auto r = cf::olsh::run_olshanskii_chain();
    json roots = json::array();
    for (const auto& rt : r.roots)
        roots.push_back({{"functional", rat_pair(rt.functional)},
                         {"compact", rt.compact},
                         {"block", rt.block}});
    json killing = json::array(
        {json::array({rat_json(r.killing_h[0][0]), rat_json(r.killing_h[0][1])}),
         json::array({rat_json(r.killing_h[1][0]), rat_json(r.killing_h[1][1])})});
    const double pairing_residual = cf::olsh::contact_pairing_residual(0.7, -0.3);
    json j = {{"basis_in_algebra", r.basis_in_algebra},
              {"closed_under_bracket", r.closed_under_bracket},
              {"killing_h", killing},
              {"roots", roots},
              {"H1", rat_pair(r.H1)},
              {"Z", rat_pair(r.Z)},
              {"H0", rat_pair(r.H0)},
              {"c1_generators",
               json::array({rat_pair(r.c1_generators[0]), rat_pair(r.c1_generators[1])})},
              {"c0_generators",
               json::array({rat_pair(r.c0_generators[0]), rat_pair(r.c0_generators[1])})},
              {"cone_generators",
               json::array({rat_pair(r.cone_generators[0]), rat_pair(r.cone_generators[1])})},
              {"cone_in_plus_minus_c0", r.cone_in_plus_minus_c0},
              {"orderable", r.orderable},
              {"contact_pairing_residual", pairing_residual}};
    const bool pass = r.basis_in_algebra && r.closed_under_bracket &&
                      !r.cone_in_plus_minus_c0 && !r.orderable &&
                      pairing_residual < 1e-8;
    return {std::move(j), pass};
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contactforge: numerical and exact verification toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, csv_path;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "flat dotted-key config file");
    app.add_option("--set", sets, "override: key=value (repeatable)");
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--csv", csv_path, "also write a flattened CSV projection");

    const std::vector<std::string> commands = {
        "verify-map", "verify-loop", "s3-loop",        "mu",
        "fundamental", "squeeze-verdict", "squeeze-plan", "pipeline",
        "cz",          "ch-ellipsoid",    "spectrum",     "profile",
        "olshanskii",  "main-loop"};
    for (const auto& c : commands) app.add_subcommand(c)->fallthrough(true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Config cfg;
        if (!config_path.empty()) cfg.load_file(config_path);
        for (const auto& s : sets) cfg.set(s);

        const std::string cmd = app.get_subcommands().front()->get_name();
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        if (cmd == "verify-map") o = run_verify_map(cfg);
        else if (cmd == "verify-loop") o = run_verify_loop(cfg);
        else if (cmd == "s3-loop") o = run_s3_loop(cfg);
        else if (cmd == "mu") o = run_main_loop(cfg, true);
        else if (cmd == "main-loop") o = run_main_loop(cfg, false);
        else if (cmd == "fundamental") o = run_fundamental(cfg);
        else if (cmd == "squeeze-verdict") o = run_squeeze_verdict(cfg);
        else if (cmd == "squeeze-plan") o = run_squeeze_plan(cfg);
        else if (cmd == "pipeline") o = run_pipeline(cfg);
        else if (cmd == "cz") o = run_cz(cfg);
        else if (cmd == "ch-ellipsoid") o = run_ch_ellipsoid(cfg);
        else if (cmd == "spectrum") o = run_spectrum(cfg);
        else if (cmd == "profile") o = run_profile(cfg);
        else if (cmd == "olshanskii") o = run_olshanskii(cfg);
        const auto t1 = std::chrono::steady_clock::now();
        std::cerr << "runtime_ms="
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                         .count()
                  << "\n";

        json report = {{"schema_version", 1},
                       {"tool", "contactforge"},
                       {"command", cmd},
                       {"config_hash", cfg.hash()},
                       {"pass", o.pass},
                       {"result", o.result}};
        const std::string text = report.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw std::runtime_error("cannot write " + out_path);
            f << text;
        }
        if (!csv_path.empty()) {
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(report, "", rows);
            std::ofstream f(csv_path);
            if (!f) throw std::runtime_error("cannot write " + csv_path);
            f << "key,value\n";
            for (const auto& [k, v] : rows) f << k << "," << v << "\n";
        }
        return o.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
