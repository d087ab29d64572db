#pragma once

#include "contactforge/maps.hpp"

namespace cf {

// Passes iff H(z,t) > margin * pi|z|^2 at every grid point (relative margin:
// equivariance makes absolute margins meaningless across shells).
BoundReport positivity_check(const HamiltonianField& H, const SamplingGrid& grid,
                             double margin,
                             const std::string& name = "hamiltonian",
                             const std::string& anchor = "loop-positivity");

// mu_hat = -(grid min of F_s(z,t)/(pi|z|^2)) over the (z,t,s) grid.
MuEstimate mu_estimate(const HamiltonianField& Fs, const SamplingGrid& grid);

// Min over the (z,t,s) grid of F^(s)(f^(s)_t z, t) + varrho(z) + tol*(1+rho(z)),
// with F^(s) obtained from the exact matrix generator of f^(s)_{n,t}.
// Passes iff the minimum is >= 0.
BoundReport fundamental_inequality_check(int n, const SamplingGrid& grid,
                                         double tol = 1e-6);

// Applies shift Y, then Psi, then Phi to the sample set K in the cylinder
// {rho_2 < 1}; checks varrho < 1/n after Psi o Y and rho <= 1/(n-1) + tol
// after Phi. The shift is enlarged until Y(K) lies in the required wedge.
struct PipelineResult {
    BoundReport report;
    double shift_used = 0;
    int enlargements = 0;
};
PipelineResult squeeze_pipeline_check(int n, const std::vector<CVec>& K,
                                      const SamplingGrid& grid, double tol = 1e-9);

}  // namespace cf
