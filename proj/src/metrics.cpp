#include "sbmkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace sbmkit {

double coverage(const BlockStats& stats) {
    const double two_m = static_cast<double>(stats.total_degree());
    if (two_m <= 0.0)
        throw std::domain_error("coverage: undefined on an edgeless graph");
    long long within = 0;
    for (int r = 0; r < stats.block_count(); ++r)
        within += stats.block_degree_within(r);
    return within / two_m;
}

double modularity(const BlockStats& stats) {
    const double two_m = static_cast<double>(stats.total_degree());
    if (two_m <= 0.0)
        throw std::domain_error("modularity: undefined on an edgeless graph");
    double q = 0.0;
    for (int r = 0; r < stats.block_count(); ++r) {
        const double within = static_cast<double>(stats.block_degree_within(r)) / two_m;
        const double share = static_cast<double>(stats.block_degree(r)) / two_m;
        q += within - share * share;
    }
    return q;
}

int partition_mismatch(const Partition& p, const Partition& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("partition_mismatch: size mismatch");
    const int B = std::max(p.block_count, q.block_count);
    if (B > 8)
        throw std::invalid_argument("partition_mismatch: exact search capped at 8 blocks");
    const int n = p.size();
    if (n == 0) return 0;
    std::vector<int> confusion(static_cast<std::size_t>(B) * B, 0);
    for (int i = 0; i < n; ++i)
        ++confusion[static_cast<std::size_t>(p.assignment[i]) * B + q.assignment[i]];
    std::vector<int> perm(B);
    std::iota(perm.begin(), perm.end(), 0);
    int best_agreement = 0;
    do {
        int agreement = 0;
        for (int a = 0; a < B; ++a)
            agreement += confusion[static_cast<std::size_t>(a) * B + perm[a]];
        best_agreement = std::max(best_agreement, agreement);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return n - best_agreement;
}

double partition_distance(const Partition& p, const Partition& q) {
    if (p.size() == 0) return 0.0;
    return static_cast<double>(partition_mismatch(p, q)) / p.size();
}

Partition interpolate_partitions(const Partition& p, const Partition& q, Rng& rng,
                                 double weight) {
    if (p.size() != q.size())
        throw std::invalid_argument("interpolate_partitions: size mismatch");
    if (weight < 0.0 || weight > 1.0)
        throw std::invalid_argument("interpolate_partitions: weight outside [0, 1]");
    std::vector<int> mixed(p.assignment);
    for (std::size_t i = 0; i < mixed.size(); ++i)
        if (rng.uniform01() < weight)
            mixed[i] = q.assignment[i];
    return Partition(std::move(mixed), std::max(p.block_count, q.block_count));
}

MdsResult mds_project(const std::vector<std::vector<double>>& distance) {
    const int n = static_cast<int>(distance.size());
    MdsResult result;
    result.coords.assign(n, {0.0, 0.0});
    if (n == 0) return result;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(distance[i].size()) != n)
            throw std::invalid_argument("mds_project: distance matrix is not square");
        if (std::abs(distance[i][i]) > 1e-12)
            throw std::invalid_argument("mds_project: nonzero diagonal");
        for (int j = 0; j < n; ++j) {
            if (distance[i][j] < 0.0)
                throw std::invalid_argument("mds_project: negative distance");
            if (std::abs(distance[i][j] - distance[j][i]) > 1e-9)
                throw std::invalid_argument("mds_project: asymmetric distance matrix");
        }
    }

    // Gram matrix from double-centered squared distances
    Eigen::MatrixXd sq(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sq(i, j) = distance[i][j] * distance[i][j];
    const Eigen::VectorXd row_mean = sq.rowwise().mean();
    const double grand_mean = sq.mean();
    Eigen::MatrixXd gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gram(i, j) = -0.5 * (sq(i, j) - row_mean(i) - row_mean(j) + grand_mean);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("mds_project: eigendecomposition failed");
    // eigenvalues come sorted ascending
    result.eigenvalue1 = solver.eigenvalues()(n - 1);
    result.eigenvalue2 = n >= 2 ? solver.eigenvalues()(n - 2) : 0.0;

    auto fill_axis = [&](int which, int column) {
        const double eig = which == 0 ? result.eigenvalue1 : result.eigenvalue2;
        if (column < 0 || eig <= 0.0) return; // flat direction: keep zeros
        Eigen::VectorXd axis = solver.eigenvectors().col(column) * std::sqrt(eig);
        int pivot = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(axis(i)) > std::abs(axis(pivot))) pivot = i;
        if (axis(pivot) < 0.0) axis = -axis;
        for (int i = 0; i < n; ++i)
            result.coords[i][which] = axis(i);
    };
    fill_axis(0, n - 1);
    fill_axis(1, n >= 2 ? n - 2 : -1);
    return result;
}

} // namespace sbmkit
