#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sbmkit/multigraph.hpp"

using namespace sbmkit;

namespace {

std::string data_path(const char* name) {
    return std::string(SBMKIT_SOURCE_DIR) + "/data/" + name;
}

// Edge multiset with endpoints sorted inside each pair, for order-insensitive
// comparison of graphs.
std::multiset<std::pair<int, int>> edge_multiset(const Multigraph& g) {
    std::multiset<std::pair<int, int>> out;
    for (auto [u, v] : g.edges()) out.insert({std::min(u, v), std::max(u, v)});
    return out;
}

} // namespace

TEST_SUITE("multigraph") {

TEST_CASE("karate file loads with the catalogued size") {
    const Multigraph g = Multigraph::load_edge_list(data_path("karate.txt"));
    CHECK(g.node_count() == 34);
    CHECK(g.edge_count() == 78);
    // labels follow first appearance in the file
    CHECK(g.label(0) == "n0");
}

TEST_CASE("degree sum is twice the edge count") {
    const Multigraph karate = Multigraph::load_edge_list(data_path("karate.txt"));
    const Multigraph lesmis = Multigraph::load_edge_list(data_path("lesmis.txt"));
    for (const Multigraph* g : {&karate, &lesmis}) {
        long long degree_sum = 0;
        for (int i = 0; i < g->node_count(); ++i) degree_sum += g->degree(i);
        CHECK(degree_sum == 2 * g->edge_count());
        CHECK(degree_sum == g->total_degree());
    }
}

TEST_CASE("empty document parses to the empty graph") {
    const Multigraph g = Multigraph::parse_edge_list("");
    CHECK(g.node_count() == 0);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("comments and blank lines are skipped") {
    const Multigraph g = Multigraph::parse_edge_list("# header\n\na b\n  # indented comment\nb c\n");
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("malformed line reported with its number") {
    CHECK_THROWS_WITH_AS(Multigraph::parse_edge_list("a b\nc\n"),
                         doctest::Contains("line 2"), std::runtime_error);
    CHECK_THROWS_WITH_AS(Multigraph::parse_edge_list("a b\nc d\ne f g\n"),
                         doctest::Contains("line 3"), std::runtime_error);
}

TEST_CASE("node ids follow first appearance order") {
    const Multigraph g = Multigraph::parse_edge_list("x y\ny z\nz x\n");
    CHECK(g.label(0) == "x");
    CHECK(g.label(1) == "y");
    CHECK(g.label(2) == "z");
}

TEST_CASE("repeated lines become multi-edges, repeated endpoints loops") {
    const Multigraph g = Multigraph::parse_edge_list("a b\na b\nc c\n");
    CHECK(g.edge_count() == 3);
    CHECK(g.adjacency_count(0, 1) == 2);
    CHECK(g.adjacency_count(2, 2) == 2); // A_ii = 2 per loop
    CHECK(g.degree(2) == 2);             // a loop contributes 2 to the degree
    // the loop node appears twice in its own endpoint list
    CHECK(std::count(g.neighbors(2).begin(), g.neighbors(2).end(), 2) == 2);
}

TEST_CASE("simplified collapses multiplicities and keeps loops") {
    const Multigraph g = Multigraph::parse_edge_list("a b\na b\nb c\nc c\nc c\n");
    const Multigraph s = g.simplified();
    CHECK(s.edge_count() == 3);
    CHECK(s.adjacency_count(0, 1) == 1);
    CHECK(s.adjacency_count(2, 2) == 2); // one surviving loop
}

TEST_CASE("save and reload preserve the edge multiset") {
    const Multigraph g = Multigraph::load_edge_list(data_path("karate.txt"));
    std::ostringstream out;
    g.save_edge_list(out);
    const Multigraph back = Multigraph::parse_edge_list(out.str());
    CHECK(back.node_count() == g.node_count());
    CHECK(edge_multiset(back) == edge_multiset(g));
    // labels survive the trip too
    for (int i = 0; i < g.node_count(); ++i) CHECK(back.label(i) == g.label(i));
}

TEST_CASE("twin stars is two 4-leaf stars joined hub to hub") {
    const Multigraph g = Multigraph::twin_stars();
    CHECK(g.node_count() == 10);
    CHECK(g.edge_count() == 9);
    CHECK(g.degree(0) == 5);
    CHECK(g.degree(1) == 5);
    for (int leaf = 2; leaf < 10; ++leaf) CHECK(g.degree(leaf) == 1);
    CHECK(g.adjacency_count(0, 1) == 1);
    for (int i = 0; i < 10; ++i) {
        CHECK(g.adjacency_count(i, i) == 0);
        for (int j = i + 1; j < 10; ++j) CHECK(g.adjacency_count(i, j) <= 1);
    }
}

TEST_CASE("sparsified with zero removals is the identity") {
    const Multigraph g = Multigraph::load_edge_list(data_path("karate.txt"));
    const Multigraph same = g.sparsified(0, 42);
    CHECK(same.node_count() == g.node_count());
    CHECK(edge_multiset(same) == edge_multiset(g));
}

TEST_CASE("sparsified with full removal leaves the empty graph") {
    const Multigraph g = Multigraph::load_edge_list(data_path("karate.txt"));
    const Multigraph empty = g.sparsified(78, 42);
    CHECK(empty.node_count() == 0);
    CHECK(empty.edge_count() == 0);
}

TEST_CASE("sparsified rejects removing more edges than exist") {
    const Multigraph g = Multigraph::twin_stars();
    CHECK_THROWS_AS((void)g.sparsified(10, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)g.sparsified(-1, 1), std::invalid_argument);
}

TEST_CASE("sparsified prunes isolated nodes and differs across seeds") {
    const Multigraph g = Multigraph::load_edge_list(data_path("karate.txt"));
    const Multigraph a = g.sparsified(20, 1);
    const Multigraph b = g.sparsified(20, 2);
    CHECK(a.edge_count() == 58);
    CHECK(b.edge_count() == 58);
    for (int i = 0; i < a.node_count(); ++i) CHECK(a.degree(i) > 0);
    for (int i = 0; i < b.node_count(); ++i) CHECK(b.degree(i) > 0);
    CHECK(edge_multiset(a) != edge_multiset(b));
    // removal can only lower the mean degree (pruning cannot raise it past
    // the original because pruned nodes had degree 0 already)
    CHECK(a.mean_degree() <= g.mean_degree() + 1e-12);
    // deterministic per seed
    const Multigraph a2 = g.sparsified(20, 1);
    CHECK(edge_multiset(a2) == edge_multiset(a));
}

TEST_CASE("save_ordered renumbers to reload order and drops isolated nodes") {
    // node 3 is isolated: the text format cannot carry it.  Edges normalize
    // to (low, high), so the stored order is (1,2), (0,1) and node 1 leads.
    const Multigraph g(4, {{2, 1}, {1, 0}}, {"a", "b", "c", "d"});
    std::vector<int> id_map;
    const Multigraph ordered = g.save_ordered(&id_map);
    CHECK(ordered.node_count() == 3);
    CHECK(id_map == std::vector<int>{2, 0, 1, -1});
    CHECK(ordered.label(0) == "b");
    CHECK(ordered.label(1) == "c");
    CHECK(ordered.label(2) == "a");

    std::ostringstream out;
    ordered.save_edge_list(out);
    const Multigraph back = Multigraph::parse_edge_list(out.str());
    // ids now stable under a save/load cycle
    for (int i = 0; i < ordered.node_count(); ++i) CHECK(back.label(i) == ordered.label(i));
    CHECK(edge_multiset(back) == edge_multiset(ordered));
}

TEST_CASE("load_edge_list reports unreadable paths") {
    CHECK_THROWS_WITH_AS(Multigraph::load_edge_list("/nonexistent/nowhere.txt"),
                         doctest::Contains("cannot open"), std::runtime_error);
}

} // TEST_SUITE
