#pragma once

#include <array>
#include <vector>

#include "sbmkit/block_stats.hpp"
#include "sbmkit/rng.hpp"

namespace sbmkit {

// Fraction of edge ends landing inside their own block: sum_r m_rr / 2m.
double coverage(const BlockStats& stats);

// Newman-Girvan modularity: sum_r (m_rr / 2m - (kappa_r / 2m)^2).
double modularity(const BlockStats& stats);

// Minimum number of disagreeing nodes over all relabelings of q's blocks
// (exact search; both partitions must use at most 8 blocks).
int partition_mismatch(const Partition& p, const Partition& q);
// The same, normalized by node count into [0, 1].
double partition_distance(const Partition& p, const Partition& q);

// Per-node mixture: each node keeps p's label or takes q's with probability
// `weight`.
Partition interpolate_partitions(const Partition& p, const Partition& q, Rng& rng,
                                 double weight = 0.5);

struct MdsResult {
    std::vector<std::array<double, 2>> coords;
    double eigenvalue1 = 0.0;
    double eigenvalue2 = 0.0;
};

// Classical multidimensional scaling of a pairwise distance matrix to the
// plane: double-center -D^2/2, take the top two eigenpairs, scale by the
// root eigenvalues.  Deterministic, signs canonicalized.
MdsResult mds_project(const std::vector<std::vector<double>>& distance);

} // namespace sbmkit
