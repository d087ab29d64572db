#pragma once

#include <memory>

#include <nlohmann/json.hpp>

#include "contactforge/maps.hpp"
#include "contactforge/verify.hpp"

namespace cf {

// ---------------------------------------------------------------------------
// Shift parameters
// ---------------------------------------------------------------------------

struct ShiftParams {
    int n = 2;
    double nu = 0;          // ellipsoid eccentricity nu rho_1 + varrho = 1
    double c = 0;           // shift distance
    double window_lo = 0;   // admissible window for pi nu c^2
    double window_hi = 1.0;
    double pi_nu_c_sq = 0;  // chosen midpoint value
    double lambda_sq = 0;   // (1 + pi nu c^2) / 2
};

// Smallest power-of-ten nu with a nonempty window
// (2n/(2n+1) + nu 2n/(n-1), 1); c places pi nu c^2 at the window midpoint.
ShiftParams choose_shift_params(int n);

struct OdeConfig {
    int steps_per_unit = 512;  // RK4 steps per unit of shift parameter
};

// ---------------------------------------------------------------------------
// Distinguished equivariant symplectomorphism a = a^{(c)}
// ---------------------------------------------------------------------------
//
// Flow of the equivariant extension F_s of the contact Hamiltonian -q_1 on
// the ellipsoid E = {nu rho_1 + varrho = 1}. F_s(z) = -q_1(z)/x where x is
// the unique positive root of A x^2 + B x + (C - 1) = 0 with
// A = nu pi|z_1|^2 + pi|w|^2, B = -2 nu pi p_1 s, C = nu pi s^2; i.e. x is
// the scale placing the backward-shifted point Y_{-s}(x z) on E. The induced
// vector field is 1-homogeneous, so the flow is integrated on the unit
// sphere with a separate log-scale variable.
class DistinguishedMap {
  public:
    explicit DistinguishedMap(ShiftParams params, OdeConfig ode = {});

    double extension_value(const CVec& z, double s) const;  // F_s(z)
    CVec shift_field(const CVec& z, double s) const;        // sgrad F_s

    // a^{(sigma c)} and its inverse; sigma in [0,1] is the homotopy parameter.
    CVec apply(const CVec& z, double sigma = 1.0) const;
    CVec apply_inverse(const CVec& z, double sigma = 1.0) const;

    struct Diagnostics {
        double first_integral_drift = 0;  // max |varrho(a z) - varrho(z)|
        double richardson_err = 0;        // step-halving discrepancy
        double equivariance_err = 0;      // |a(2z) - 2 a(z)| / |a(2z)|
        double roundtrip_err = 0;         // |a^{-1}(a(z)) - z|
    };
    Diagnostics diagnose(const SamplingGrid& grid, int sample_cap = 32) const;

    const ShiftParams& params() const { return params_; }
    const OdeConfig& ode() const { return ode_; }

  private:
    CVec flow(const CVec& z, double s_from, double s_to) const;
    ShiftParams params_;
    OdeConfig ode_;
};

// Flow cache: trajectories of sample directions, reusable across runs.
nlohmann::json flow_cache_to_json(const DistinguishedMap& map,
                                  const SamplingGrid& grid, int samples = 16);
// Recomputes the cached trajectories; true iff all match within tol and the
// cached parameters agree with the map's.
bool verify_flow_cache(const DistinguishedMap& map, const nlohmann::json& cache,
                       double tol = 1e-9);

// a maps the unit-capacity sphere {rho = 1} into the interior of the wedge
// W = {(2n+1) varrho - (n-1) rho_1 <= 1}.
BoundReport wedge_inclusion_check(const DistinguishedMap& map,
                                  const SamplingGrid& grid);

// ---------------------------------------------------------------------------
// Main loop phi_t = e_{-t} f_{3t} a e_t a^{-1} and its homotopy stages
// ---------------------------------------------------------------------------

struct MainLoop {
    int n = 2;
    std::shared_ptr<DistinguishedMap> a;
    UnitaryCatalog cat;
    PathFamily phi;  // the loop itself (fwd/inv by composition)

    // Inner Hamiltonians of the two unitary deformation stages.
    HamiltonianField G_s;  // G^{(s)}(z,t) = F^{(s)}(z,t) + rho(a^{-1}(f_t^{(s)})^{-1} z)
    HamiltonianField H_s;  // H^{(s)}(z,t) = 2 F^{(s)}(z,2t) + G((f_{2t}^{(s)})^{-1} z, t)
    HamiltonianField Phi;  // Phi(z,t) = -rho(z) + H^{(1)}(e_t z, t)

    // Loop Hamiltonians of the three homotopy stages (each includes the
    // leading -rho(z) of the e_{-t} factor); s in [0,1].
    HamiltonianField stage1, stage2, stage3;
};

MainLoop build_main_loop(int n, OdeConfig ode = {});

struct MainLoopChecks {
    BoundReport phi_lower;   // Phi - (2n-3) rho > 0
    BoundReport g_positive;  // G^{(s)} >= 0
    BoundReport h_positive;  // H^{(s)} >= 0
    BoundReport closure;     // phi_1 = id
    BoundReport wedge;       // wedge inclusion for a
    MuEstimate mu;           // underestimate of the positivity defect
    bool pass = false;
};

// Full verification sweep. The grid's sphere directions are enriched with the
// images a(x)/|a(x)|, where the defect minimizers concentrate.
MainLoopChecks verify_main_loop(const MainLoop& loop, const SamplingGrid& grid);

}  // namespace cf
