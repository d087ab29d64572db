#pragma once

#include <optional>

#include "contactforge/verify.hpp"

namespace cf {

// ---------------------------------------------------------------------------
// Squeezing trichotomy
// ---------------------------------------------------------------------------

enum class SqueezeTarget { ball, cylinder };

struct SqueezeVerdict {
    enum class Kind { non_squeezable, squeezable, restricted, open, trivial_inclusion };
    Kind kind = Kind::open;
    // Branch labels: "integer-obstruction", "small-radius-squeeze",
    // "restricted-window", "open", "trivial-inclusion".
    std::string branch;
    int m = 0, k = 0;         // binding integers (0 when unused)
    double window_lo = 0, window_hi = 0;  // R3 window for the restricted branch
};

// Decision procedure. Boundary cases use the statements' own inequality
// types: R2 <= m <= R1 non-strict; R1, R2 < 1 strict.
SqueezeVerdict squeezing_verdict(int n, double R1, double R2, SqueezeTarget target,
                                 std::optional<double> R3 = std::nullopt);

// ---------------------------------------------------------------------------
// Iteration planner: v(R) = R/(1 + gamma R)
// ---------------------------------------------------------------------------

struct IterationPlan {
    int N = 0;  // minimal N with v^(N)(R1) < R2
    std::vector<double> trajectory;  // R1, v(R1), ..., v^(N)(R1)
};
IterationPlan iteration_plan(double R1, double R2, double gamma);

// ---------------------------------------------------------------------------
// Reparameterized homotopy builder
// ---------------------------------------------------------------------------

struct CorrespHomotopy {
    double delta = 0, R = 0, rho_out = 0, mu = 0;
    double plateau = 0;       // plateau width actually used (adapted to delta)
    double max_slope = 0;     // max tau'
    std::function<double(double)> tau, tau_prime, theta, theta_prime;
    // s in [-1,1]: Step 1 on [-1,0], Step 2 on [0,1].
    HamiltonianField H;
    std::vector<BoundReport> checks;
    bool pass = false;
};

// E: the ambient Hamiltonian (e.g. pi|z|^2); Eflow: its flow (arbitrary real
// time); Fs: homotopy Hamiltonians of the loop family, s in [0,1].
// Preconditions: delta^2 < 1 - R/rho_out and delta^2 < 1 - 1/(rho_out(1/R - mu)).
CorrespHomotopy build_corresp_homotopy(const HamiltonianField& E,
                                       const PathFamily& Eflow,
                                       const HamiltonianField& Fs, double R,
                                       double rho_out, double mu, double delta,
                                       const SamplingGrid& grid,
                                       double plateau_request = 0.1);

// ---------------------------------------------------------------------------
// Capacity bracket (bookkeeping only; capacities are user inputs)
// ---------------------------------------------------------------------------

struct CapacityBracket {
    double c_under = 0, c_over = 0;
    bool point_estimate = false;  // bracket collapses
    double negligibility_rescale = 0;  // c_over^2 interpretation note
    std::string note;
};
CapacityBracket capacity_bracket(double c_under, double c_over);

}  // namespace cf
