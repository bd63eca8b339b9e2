#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sbmkit {

// Undirected multigraph with self-loops, stored as an edge multiset plus a
// flat neighbor-endpoint list per node.  Convention: a self-loop at i adds 2
// to A_ii and 2 to the degree of i, and i appears twice in its own endpoint
// list.  Node ids are dense 0..n-1; the original text labels are kept so
// reports stay readable.
class Multigraph {
public:
    Multigraph() = default;
    Multigraph(int node_count, std::vector<std::pair<int, int>> edges,
               std::vector<std::string> labels = {});

    // Text format: one "u v" pair per line, '#' starts a comment, blank lines
    // skipped.  Labels are arbitrary whitespace-free tokens mapped to dense
    // ids in first-appearance order.  Malformed lines raise with line number.
    static Multigraph parse_edge_list(std::istream& in);
    static Multigraph parse_edge_list(const std::string& text);
    static Multigraph load_edge_list(const std::string& path);
    void save_edge_list(std::ostream& out) const;
    void save_edge_list(const std::string& path) const;

    // The ten-node example used throughout: hubs 0 and 1 joined by an edge,
    // hub 0 attached to leaves 2..5 and hub 1 to leaves 6..9.
    static Multigraph twin_stars();

    // Copy with duplicate edges collapsed to multiplicity one (loops kept,
    // also collapsed).
    Multigraph simplified() const;

    // Copy with `remove_count` uniformly chosen edges deleted and any node
    // left isolated pruned; labels follow surviving nodes.
    Multigraph sparsified(int remove_count, std::uint64_t seed) const;

    // Copy renumbered to the ids a reload of save_edge_list output assigns
    // (first appearance along the edge list); isolated nodes are dropped
    // since the format cannot carry them.  `old_to_new`, when given, gets
    // the id map with -1 for dropped nodes.  Use before persisting a graph
    // whose companion files (planted partitions etc.) refer to node ids.
    Multigraph save_ordered(std::vector<int>* old_to_new = nullptr) const;

    int node_count() const { return node_count_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    long long total_degree() const { return 2 * edge_count(); } // 2m
    double mean_degree() const;

    int degree(int i) const { return static_cast<int>(endpoints_[i].size()); }
    // A_ij with the A_ii = 2 * (#loops at i) convention
    int adjacency_count(int i, int j) const;
    // Flat endpoint list: one entry per incident edge end, multiplicities
    // included, i itself listed twice per self-loop.  Size == degree(i).
    const std::vector<int>& neighbors(int i) const { return endpoints_[i]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    void build_endpoints();

    int node_count_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> endpoints_;
    std::vector<std::string> labels_;
};

} // namespace sbmkit
