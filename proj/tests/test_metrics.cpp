#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sbmkit/block_stats.hpp"
#include "sbmkit/metrics.hpp"
#include "sbmkit/multigraph.hpp"
#include "sbmkit/rng.hpp"

using namespace sbmkit;

namespace {

const std::vector<int> kStarsAssortative{0, 1, 0, 0, 0, 0, 1, 1, 1, 1};
const std::vector<int> kStarsTwisted{0, 1, 1, 1, 1, 1, 0, 0, 0, 0};

Partition random_partition(int n, int blocks, Rng& rng) {
    std::vector<int> a(n);
    for (int& b : a) b = static_cast<int>(rng.uniform_below(blocks));
    return Partition(std::move(a), blocks);
}

double point_distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("coverage counts the within-block edge fraction") {
    const Multigraph g = Multigraph::twin_stars();
    CHECK(coverage(BlockStats(g, Partition(kStarsAssortative, 2))) ==
          doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(coverage(BlockStats(g, Partition(kStarsTwisted, 2))) == 0.0);
    CHECK(coverage(BlockStats(g, Partition(std::vector<int>(10, 0), 1))) == 1.0);
}

TEST_CASE("coverage and modularity refuse edgeless graphs") {
    const Multigraph empty(3, {});
    const BlockStats stats(empty, Partition({0, 1, 0}, 2));
    CHECK_THROWS_AS(coverage(stats), std::domain_error);
    CHECK_THROWS_AS(modularity(stats), std::domain_error);
}

TEST_CASE("coverage never drops when blocks merge") {
    const Multigraph g = Multigraph::load_edge_list(std::string(SBMKIT_SOURCE_DIR) +
                                                    "/data/karate.txt");
    Rng rng(21);
    for (int round = 0; round < 30; ++round) {
        const Partition fine = random_partition(g.node_count(), 4, rng);
        std::vector<int> merged = fine.assignment;
        for (int& b : merged) b = b / 2; // 0,1 -> 0 and 2,3 -> 1
        const double before = coverage(BlockStats(g, fine));
        const double after = coverage(BlockStats(g, Partition(std::move(merged), 2)));
        CHECK(after >= before - 1e-12);
    }
}

TEST_CASE("modularity matches hand values and stays in range") {
    const Multigraph g = Multigraph::twin_stars();
    // two stars: within-degree 8 of 18 per block, degree share 1/2 each
    CHECK(modularity(BlockStats(g, Partition(kStarsAssortative, 2))) ==
          doctest::Approx(7.0 / 18.0).epsilon(1e-12));
    CHECK(modularity(BlockStats(g, Partition(std::vector<int>(10, 0), 1))) == 0.0);

    const Multigraph karate = Multigraph::load_edge_list(std::string(SBMKIT_SOURCE_DIR) +
                                                         "/data/karate.txt");
    Rng rng(22);
    double total = 0.0;
    for (int round = 0; round < 200; ++round) {
        const double q = modularity(BlockStats(karate, random_partition(34, 2, rng)));
        CHECK(q > -0.5 - 1e-12);
        CHECK(q < 1.0);
        total += q;
    }
    CHECK(std::fabs(total / 200) < 0.05); // random splits carry no structure
}

TEST_CASE("mismatch is zero exactly up to relabeling") {
    const Partition p({0, 0, 1, 1, 2, 2}, 3);
    const Partition swapped({2, 2, 0, 0, 1, 1}, 3);
    CHECK(partition_mismatch(p, p) == 0);
    CHECK(partition_mismatch(p, swapped) == 0);
    CHECK(partition_distance(p, swapped) == 0.0);

    Partition off = p;
    off.assignment[5] = 0;
    CHECK(partition_mismatch(p, off) == 1);
    CHECK(partition_distance(p, off) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    CHECK(partition_mismatch(Partition({0, 0, 1, 1}, 2), Partition({0, 1, 0, 1}, 2)) == 2);
    // widths differ: the search runs over the larger label set
    CHECK(partition_mismatch(Partition({0, 1, 1, 0}, 2), Partition({0, 1, 2, 0}, 3)) == 1);
}

TEST_CASE("mismatch validates its inputs") {
    CHECK_THROWS_AS(partition_mismatch(Partition({0, 1}, 2), Partition({0}, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(partition_mismatch(Partition(std::vector<int>(9, 0), 9),
                                       Partition(std::vector<int>(9, 0), 9)),
                    std::invalid_argument);
}

TEST_CASE("mismatch is a relabel-invariant symmetric bound on hamming") {
    Rng rng(23);
    for (int round = 0; round < 50; ++round) {
        const Partition p = random_partition(7, 3, rng);
        const Partition q = random_partition(7, 3, rng);
        const int pq = partition_mismatch(p, q);
        CHECK(pq == partition_mismatch(q, p));
        int hamming = 0;
        for (int i = 0; i < 7; ++i) hamming += p.assignment[i] != q.assignment[i] ? 1 : 0;
        CHECK(pq <= hamming);
        // rotating q's labels must not change the score
        std::vector<int> rotated = q.assignment;
        for (int& b : rotated) b = (b + 1) % 3;
        CHECK(partition_mismatch(p, Partition(std::move(rotated), 3)) == pq);
    }
}

TEST_CASE("interpolation mixes labels node by node") {
    const int n = 10000;
    const Partition zeros(std::vector<int>(n, 0), 2);
    const Partition ones(std::vector<int>(n, 1), 2);
    Rng rng(24);
    CHECK(interpolate_partitions(zeros, ones, rng, 0.0).assignment == zeros.assignment);
    CHECK(interpolate_partitions(zeros, ones, rng, 1.0).assignment == ones.assignment);

    const Partition mixed = interpolate_partitions(zeros, ones, rng, 0.3);
    long long taken = 0;
    for (int b : mixed.assignment) {
        CHECK((b == 0 || b == 1));
        taken += b;
    }
    // binomial mean 0.3, ~4.5 sigma band at n = 10000
    CHECK(std::fabs(taken / static_cast<double>(n) - 0.3) < 0.021);

    Rng other(25);
    const Partition p({0, 2, 1}, 3);
    CHECK(interpolate_partitions(p, p, other, 0.7).assignment == p.assignment);
    CHECK(interpolate_partitions(p, p, other, 0.7).block_count == 3);
    CHECK_THROWS_AS(interpolate_partitions(zeros, ones, other, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_partitions(zeros, ones, other, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_partitions(zeros, p, other, 0.5), std::invalid_argument);
}

TEST_CASE("plane projection reproduces planar configurations") {
    // six points with a known flat embedding
    const std::vector<std::array<double, 2>> pts{
        {0.0, 0.0}, {2.0, 0.0}, {0.5, 1.5}, {-1.0, 0.8}, {1.2, -0.9}, {3.0, 1.0}};
    const int n = static_cast<int>(pts.size());
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dist[i][j] = point_distance(pts[i], pts[j]);
    const MdsResult res = mds_project(dist);
    REQUIRE(res.coords.size() == pts.size());
    CHECK(res.eigenvalue1 > 0.0);
    CHECK(res.eigenvalue2 > 0.0);
    // the embedding is unique up to rigid motion, so compare distances
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            CHECK(point_distance(res.coords[i], res.coords[j]) ==
                  doctest::Approx(dist[i][j]).epsilon(1e-6));
}

TEST_CASE("plane projection flattens collinear configurations") {
    const int n = 4;
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dist[i][j] = std::abs(i - j);
    const MdsResult res = mds_project(dist);
    CHECK(res.eigenvalue2 < 1e-9 * res.eigenvalue1);
    for (int i = 0; i < n; ++i) CHECK(std::fabs(res.coords[i][1]) < 1e-6);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            CHECK(std::fabs(res.coords[i][0] - res.coords[j][0]) ==
                  doctest::Approx(dist[i][j]).epsilon(1e-9));
}

TEST_CASE("plane projection keeps symmetric structure symmetric") {
    // equilateral triangle: all embedded pairwise gaps equal
    std::vector<std::vector<double>> tri{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    const MdsResult res = mds_project(tri);
    const double d01 = point_distance(res.coords[0], res.coords[1]);
    const double d02 = point_distance(res.coords[0], res.coords[2]);
    const double d12 = point_distance(res.coords[1], res.coords[2]);
    CHECK(d01 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d02 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d12 == doctest::Approx(1.0).epsilon(1e-9));

    // coincident points land on the same spot
    std::vector<std::vector<double>> dup{{0, 0, 2}, {0, 0, 2}, {2, 2, 0}};
    const MdsResult two = mds_project(dup);
    CHECK(point_distance(two.coords[0], two.coords[1]) < 1e-9);
}

TEST_CASE("plane projection is deterministic and validates input") {
    std::vector<std::vector<double>> tri{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    const MdsResult a = mds_project(tri);
    const MdsResult b = mds_project(tri);
    for (int i = 0; i < 3; ++i) {
        CHECK(a.coords[i][0] == b.coords[i][0]);
        CHECK(a.coords[i][1] == b.coords[i][1]);
    }

    CHECK(mds_project({}).coords.empty());
    const MdsResult solo = mds_project({{0.0}});
    REQUIRE(solo.coords.size() == 1);
    CHECK(solo.coords[0][0] == 0.0);
    CHECK(solo.eigenvalue1 == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(mds_project({{0, 1}, {1, 0}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(mds_project({{0, 1}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(mds_project({{0.5, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(mds_project({{0, -1}, {-1, 0}}), std::invalid_argument);
}

} // TEST_SUITE
