#pragma once

#include <vector>

#include "sbmkit/models.hpp"
#include "sbmkit/multigraph.hpp"
#include "sbmkit/rng.hpp"

namespace sbmkit {

// Rate matrix with planted structure: gamma * omega0 on the diagonal,
// omega0 off it.  gamma > 1 plants assortative blocks, gamma = 0 is legal
// (no within-block mass at all).
OmegaMatrix planted_omega(int block_count, double omega0, double gamma);

// n degrees from P(k) proportional to k^(-exponent) on k_min..max(k_min, n-1)
// (truncated so a degree never exceeds the number of possible neighbors).
std::vector<int> sample_powerlaw_degrees(int n, double exponent, int k_min, Rng& rng);

// Poisson multigraphs.  Pair (i, j), i < j, draws A_ij ~ Poisson(lambda_ij);
// a node draws loops ~ Poisson(lambda_ii / 2), each loop adding 2 to A_ii.
// Isolated nodes are kept.
Multigraph sample_ssbm(const std::vector<int>& assignment, const OmegaMatrix& omega, Rng& rng);

// lambda_ij = omega_{g_i g_j} * w_i * w_j with raw node weights (a weight of
// k_i makes kappa-scale expected degrees once omega is per-pair mass).
Multigraph sample_dcsbm(const std::vector<int>& assignment, const OmegaMatrix& omega,
                        const std::vector<double>& weights, Rng& rng);

// Regularized rates: lambda_ij = omega_in * I_i * I_j when g_i == g_j,
// omega_out * O_i * O_j otherwise.
Multigraph sample_rsbm(const std::vector<int>& assignment, double omega_in, double omega_out,
                       const NodeFactors& factors, Rng& rng);

} // namespace sbmkit
