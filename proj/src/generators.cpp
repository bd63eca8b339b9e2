#include "sbmkit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbmkit {

OmegaMatrix planted_omega(int block_count, double omega0, double gamma) {
    if (block_count < 1)
        throw std::invalid_argument("planted_omega: need at least one block");
    if (omega0 <= 0.0)
        throw std::invalid_argument("planted_omega: omega0 must be positive");
    if (gamma < 0.0)
        throw std::invalid_argument("planted_omega: gamma must be nonnegative");
    OmegaMatrix omega(block_count);
    for (int r = 0; r < block_count; ++r)
        for (int s = 0; s < block_count; ++s)
            omega.at(r, s) = r == s ? gamma * omega0 : omega0;
    return omega;
}

std::vector<int> sample_powerlaw_degrees(int n, double exponent, int k_min, Rng& rng) {
    if (n < 0)
        throw std::invalid_argument("powerlaw degrees: negative count");
    if (k_min < 1)
        throw std::invalid_argument("powerlaw degrees: k_min must be >= 1");
    if (exponent <= 1.0)
        throw std::invalid_argument("powerlaw degrees: exponent must exceed 1");
    const int k_max = std::max(k_min, n - 1);
    std::vector<double> cumulative;
    cumulative.reserve(k_max - k_min + 1);
    double total = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        total += std::pow(static_cast<double>(k), -exponent);
        cumulative.push_back(total);
    }
    std::vector<int> degrees(n);
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01() * total;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        degrees[i] = k_min + static_cast<int>(it - cumulative.begin());
        if (degrees[i] > k_max) degrees[i] = k_max; // u == total edge case
    }
    return degrees;
}

namespace {

// Common Poisson sampling loop; `rate` gives lambda_ij for i <= j.
template <typename RateFn>
Multigraph sample_poisson(int n, RateFn rate, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        const long loops = rng.poisson(rate(i, i) / 2.0);
        for (long l = 0; l < loops; ++l)
            edges.emplace_back(i, i);
        for (int j = i + 1; j < n; ++j) {
            const long count = rng.poisson(rate(i, j));
            for (long c = 0; c < count; ++c)
                edges.emplace_back(i, j);
        }
    }
    return Multigraph(n, std::move(edges));
}

void check_assignment(const std::vector<int>& assignment, int block_count) {
    for (int b : assignment)
        if (b < 0 || b >= block_count)
            throw std::invalid_argument("sampler: assignment block out of range");
}

void check_rates(const OmegaMatrix& omega) {
    for (double v : omega.values)
        if (v < 0.0)
            throw std::invalid_argument("sampler: negative rate");
}

} // namespace

Multigraph sample_ssbm(const std::vector<int>& assignment, const OmegaMatrix& omega, Rng& rng) {
    check_assignment(assignment, omega.block_count);
    check_rates(omega);
    return sample_poisson(
        static_cast<int>(assignment.size()),
        [&](int i, int j) { return omega.at(assignment[i], assignment[j]); }, rng);
}

Multigraph sample_dcsbm(const std::vector<int>& assignment, const OmegaMatrix& omega,
                        const std::vector<double>& weights, Rng& rng) {
    check_assignment(assignment, omega.block_count);
    check_rates(omega);
    if (weights.size() != assignment.size())
        throw std::invalid_argument("sample_dcsbm: weight count != node count");
    for (double w : weights)
        if (w < 0.0)
            throw std::invalid_argument("sample_dcsbm: negative weight");
    return sample_poisson(
        static_cast<int>(assignment.size()),
        [&](int i, int j) {
            return omega.at(assignment[i], assignment[j]) * weights[i] * weights[j];
        },
        rng);
}

Multigraph sample_rsbm(const std::vector<int>& assignment, double omega_in, double omega_out,
                       const NodeFactors& factors, Rng& rng) {
    if (omega_in < 0.0 || omega_out < 0.0)
        throw std::invalid_argument("sample_rsbm: negative rate");
    if (factors.in.size() != assignment.size() || factors.out.size() != assignment.size())
        throw std::invalid_argument("sample_rsbm: factor count != node count");
    return sample_poisson(
        static_cast<int>(assignment.size()),
        [&](int i, int j) {
            return assignment[i] == assignment[j]
                       ? omega_in * factors.in[i] * factors.in[j]
                       : omega_out * factors.out[i] * factors.out[j];
        },
        rng);
}

} // namespace sbmkit
