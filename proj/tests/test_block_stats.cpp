#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "sbmkit/block_stats.hpp"
#include "sbmkit/multigraph.hpp"
#include "sbmkit/rng.hpp"

using namespace sbmkit;

namespace {

// Endpoints drawn uniformly with replacement: loops and multi-edges included,
// exactly the corner cases the incremental updates must survive.
Multigraph random_multigraph(int nodes, int edges, Rng& rng) {
    std::vector<std::pair<int, int>> list;
    list.reserve(edges);
    for (int e = 0; e < edges; ++e) {
        const int u = static_cast<int>(rng.uniform_below(nodes));
        const int v = static_cast<int>(rng.uniform_below(nodes));
        list.emplace_back(u, v);
    }
    return Multigraph(nodes, std::move(list));
}

Partition random_partition(int nodes, int blocks, Rng& rng) {
    std::vector<int> a(nodes);
    for (int& x : a) x = static_cast<int>(rng.uniform_below(blocks));
    return Partition(std::move(a), blocks);
}

void check_stats_match(const BlockStats& got, const BlockStats& want) {
    const int b = want.block_count();
    REQUIRE(got.block_count() == b);
    for (int r = 0; r < b; ++r) {
        CHECK(got.block_size(r) == want.block_size(r));
        CHECK(got.block_degree(r) == want.block_degree(r));
        for (int s = 0; s < b; ++s) CHECK(got.edges_between(r, s) == want.edges_between(r, s));
    }
    for (int i = 0; i < want.node_count(); ++i)
        CHECK(got.degree_within(i) == want.degree_within(i));
    if (want.has_factors()) {
        for (int r = 0; r < b; ++r) {
            CHECK(got.in_sum(r) == doctest::Approx(want.in_sum(r)).epsilon(1e-12));
            CHECK(got.out_sum(r) == doctest::Approx(want.out_sum(r)).epsilon(1e-12));
        }
    }
}

// Internal consistency the definitions force on any correct tabulation.
void check_stats_invariants(const BlockStats& st) {
    const int b = st.block_count();
    long long total = 0;
    for (int r = 0; r < b; ++r) {
        long long row = 0;
        for (int s = 0; s < b; ++s) {
            CHECK(st.edges_between(r, s) == st.edges_between(s, r));
            row += st.edges_between(r, s);
        }
        CHECK(row == st.block_degree(r));
        total += row;
        // m_rr equals the within-degree sum over the block's nodes
        long long within = 0;
        for (int i = 0; i < st.node_count(); ++i)
            if (st.block_of(i) == r) within += st.degree_within(i);
        CHECK(within == st.edges_between(r, r));
        CHECK(st.block_degree_within(r) + st.block_degree_across(r) == st.block_degree(r));
    }
    CHECK(total == st.total_degree());
    for (int i = 0; i < st.node_count(); ++i)
        CHECK(st.degree_within(i) + st.degree_across(i) == st.degree(i));
}

} // namespace

TEST_SUITE("block_stats") {

TEST_CASE("twin stars assortative counts by hand") {
    const Multigraph g = Multigraph::twin_stars();
    // each hub with its own leaves
    BlockStats st(g, Partition({0, 1, 0, 0, 0, 0, 1, 1, 1, 1}, 2));
    CHECK(st.edges_between(0, 0) == 8);
    CHECK(st.edges_between(1, 1) == 8);
    CHECK(st.edges_between(0, 1) == 1);
    CHECK(st.edges_between(1, 0) == 1);
    CHECK(st.block_degree(0) == 9);
    CHECK(st.block_degree(1) == 9);
    CHECK(st.block_size(0) == 5);
    check_stats_invariants(st);
}

TEST_CASE("twin stars twisted puts every edge across") {
    const Multigraph g = Multigraph::twin_stars();
    // each hub grouped with the other's leaves
    BlockStats st(g, Partition({0, 1, 1, 1, 1, 1, 0, 0, 0, 0}, 2));
    CHECK(st.edges_between(0, 0) == 0);
    CHECK(st.edges_between(1, 1) == 0);
    CHECK(st.edges_between(0, 1) == 9);
    for (int i = 0; i < 10; ++i) CHECK(st.degree_within(i) == 0);
    check_stats_invariants(st);
}

TEST_CASE("single block absorbs everything") {
    const Multigraph g = Multigraph::load_edge_list(std::string(SBMKIT_SOURCE_DIR) +
                                                    "/data/karate.txt");
    BlockStats st(g, Partition(std::vector<int>(g.node_count(), 0), 1));
    CHECK(st.edges_between(0, 0) == g.total_degree());
    for (int i = 0; i < g.node_count(); ++i) CHECK(st.degree_within(i) == g.degree(i));
    check_stats_invariants(st);
}

TEST_CASE("self-loops count twice in degree, m_rr, and k_plus") {
    const Multigraph g = Multigraph::parse_edge_list("a a\na b\n");
    BlockStats st(g, Partition({0, 1}, 2));
    CHECK(st.degree(0) == 3);
    CHECK(st.degree_within(0) == 2); // the loop only
    CHECK(st.edges_between(0, 0) == 2);
    CHECK(st.edges_between(0, 1) == 1);
    check_stats_invariants(st);
}

TEST_CASE("partition size must match the node count") {
    const Multigraph g = Multigraph::twin_stars();
    CHECK_THROWS_AS(BlockStats(g, Partition({0, 1}, 2)), std::invalid_argument);
}

TEST_CASE("partition validates block ids") {
    CHECK_THROWS_AS(Partition({0, 2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(Partition({0}, 0), std::invalid_argument);
    CHECK_NOTHROW(Partition({0, 1}, 5)); // empty blocks are fine
}

TEST_CASE("moving a leaf across updates the hand-counted fields") {
    const Multigraph g = Multigraph::twin_stars();
    BlockStats st(g, Partition({0, 1, 0, 0, 0, 0, 1, 1, 1, 1}, 2));
    st.apply_move(2, 1); // leaf of hub 0 defects
    CHECK(st.edges_between(0, 1) == 2);
    CHECK(st.edges_between(1, 0) == 2);
    CHECK(st.edges_between(0, 0) == 6);
    CHECK(st.degree_within(2) == 0);
    CHECK(st.block_size(0) == 4);
    check_stats_invariants(st);
}

TEST_CASE("move and inverse move restore every field") {
    Rng rng(11);
    const Multigraph g = random_multigraph(10, 25, rng);
    BlockStats st(g, random_partition(10, 3, rng));
    const BlockStats before(g, st.partition());
    for (int round = 0; round < 50; ++round) {
        const int node = static_cast<int>(rng.uniform_below(10));
        const int from = st.block_of(node);
        const int to = static_cast<int>(rng.uniform_below(3));
        st.apply_move(node, to);
        st.apply_move(node, from);
        check_stats_match(st, before);
    }
}

TEST_CASE("incremental moves match the from-scratch tabulation") {
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const int nodes = 3 + static_cast<int>(rng.uniform_below(10)); // up to 12
        const int blocks = 2 + static_cast<int>(rng.uniform_below(3));
        const Multigraph g = random_multigraph(nodes, 2 * nodes, rng);
        BlockStats st(g, random_partition(nodes, blocks, rng));
        for (int move = 0; move < 30; ++move) {
            const int node = static_cast<int>(rng.uniform_below(nodes));
            const int to = static_cast<int>(rng.uniform_below(blocks));
            st.apply_move(node, to);
        }
        const BlockStats oracle(g, st.partition());
        check_stats_match(st, oracle);
        check_stats_invariants(st);
    }
}

TEST_CASE("factor sums track moves") {
    Rng rng(13);
    const Multigraph g = random_multigraph(8, 16, rng);
    BlockStats st(g, random_partition(8, 3, rng));
    NodeFactors f;
    for (int i = 0; i < 8; ++i) {
        f.in.push_back(0.25 * (i + 1));
        f.out.push_back(0.5);
    }
    st.attach_factors(f);
    for (int move = 0; move < 60; ++move) {
        const int node = static_cast<int>(rng.uniform_below(8));
        st.apply_move(node, static_cast<int>(rng.uniform_below(3)));
    }
    BlockStats oracle(g, st.partition());
    oracle.attach_factors(f);
    check_stats_match(st, oracle);
}

TEST_CASE("attach_factors validates length") {
    const Multigraph g = Multigraph::twin_stars();
    BlockStats st(g, Partition(std::vector<int>(10, 0), 1));
    NodeFactors wrong;
    wrong.in = {1.0};
    wrong.out = {1.0};
    CHECK_THROWS_AS(st.attach_factors(wrong), std::invalid_argument);
}

TEST_CASE("rebuild reproduces the incremental state") {
    Rng rng(14);
    const Multigraph g = random_multigraph(9, 20, rng);
    BlockStats st(g, random_partition(9, 2, rng));
    for (int move = 0; move < 25; ++move)
        st.apply_move(static_cast<int>(rng.uniform_below(9)),
                      static_cast<int>(rng.uniform_below(2)));
    BlockStats copy(g, st.partition());
    st.rebuild();
    check_stats_match(st, copy);
}

TEST_CASE("partition json round trip") {
    const Partition p({0, 2, 1, 1}, 3);
    const std::string json = partition_to_json(p);
    const Partition back = parse_partition_json(json);
    CHECK(back.assignment == p.assignment);
    CHECK(back.block_count == 3);
    // explicit block_count may widen but not shrink the label space
    CHECK(parse_partition_json(json, 5).block_count == 5);
}

TEST_CASE("partition json rejects junk") {
    CHECK_THROWS_AS(parse_partition_json("0, 1"), std::runtime_error);
    CHECK_THROWS_AS(parse_partition_json("[0, x]"), std::runtime_error);
    CHECK_THROWS_AS(parse_partition_json("[0, 1"), std::runtime_error);
}

TEST_CASE("two-column partition text round trip") {
    const Partition p({1, 0, 1}, 2);
    const std::string path = "/tmp/sbmkit_test_partition.txt";
    save_partition_text(p, path);
    const Partition back = load_partition(path);
    CHECK(back.assignment == p.assignment);
    std::remove(path.c_str());
}

TEST_CASE("partition text validates node coverage") {
    CHECK_THROWS_WITH_AS(parse_partition_text("0 0\n2 1\n"), doctest::Contains("missing node"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_partition_text("0 0\n0 1\n"), doctest::Contains("duplicate"),
                         std::runtime_error);
    // a node id with no block errors; lines without a leading integer are
    // treated as annotations and skipped
    CHECK_THROWS_WITH_AS(parse_partition_text("0 0\n1\n"), doctest::Contains("line 2"),
                         std::runtime_error);
    CHECK(parse_partition_text("0 0\nlabels ok\n1 1\n").assignment == std::vector<int>{0, 1});
}

} // TEST_SUITE
