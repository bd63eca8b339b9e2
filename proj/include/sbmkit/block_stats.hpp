#pragma once

#include <string>
#include <vector>

#include "sbmkit/multigraph.hpp"

namespace sbmkit {

// Node-to-block assignment.  block_count may exceed the number of occupied
// blocks (empty blocks are legal states).
struct Partition {
    std::vector<int> assignment;
    int block_count = 0;

    Partition() = default;
    Partition(std::vector<int> assignment_, int block_count_);
    int size() const { return static_cast<int>(assignment.size()); }
};

// Serialization: JSON integer array ("[0, 0, 1, ...]") or two-column text
// ("<node> <block>" per line, nodes 0..n-1 in any order).
Partition parse_partition_json(const std::string& text, int block_count = 0);
Partition parse_partition_text(const std::string& text, int block_count = 0);
Partition load_partition(const std::string& path, int block_count = 0);
std::string partition_to_json(const Partition& p);
void save_partition_text(const Partition& p, const std::string& path);

// Optional per-node weight pair attached to BlockStats so regularized-model
// move deltas can read per-block weight sums in O(1).
struct NodeFactors {
    std::vector<double> in;  // I_i
    std::vector<double> out; // O_i
};

// Sufficient statistics of (graph, partition) for every objective here:
// edge counts between blocks, block degree sums split by edge side, and
// per-node within-block degrees.  apply_move updates all of it in
// O(degree + blocks).
class BlockStats {
public:
    BlockStats(const Multigraph& g, Partition p);

    const Multigraph& graph() const { return *graph_; }
    int block_count() const { return block_count_; }
    int node_count() const { return graph_->node_count(); }
    long long total_degree() const { return graph_->total_degree(); } // 2m

    long long edges_between(int r, int s) const { return m_[idx(r, s)]; } // m_rs
    long long block_degree(int r) const { return kappa_[r]; }             // kappa_r
    long long block_degree_within(int r) const { return m_[idx(r, r)]; }  // kappa_r^+
    long long block_degree_across(int r) const { return kappa_[r] - m_[idx(r, r)]; }
    int block_size(int r) const { return size_[r]; }

    int block_of(int i) const { return assignment_[i]; }
    const std::vector<int>& assignment() const { return assignment_; }
    Partition partition() const { return Partition(assignment_, block_count_); }

    int degree(int i) const { return graph_->degree(i); }
    int degree_within(int i) const { return k_plus_[i]; } // k_i^+ (loops count 2)
    int degree_across(int i) const { return graph_->degree(i) - k_plus_[i]; }

    void attach_factors(NodeFactors factors);
    bool has_factors() const { return !factors_.in.empty(); }
    const NodeFactors& factors() const { return factors_; }
    double in_sum(int r) const { return in_sum_[r]; }   // sum of I_i over block r
    double out_sum(int r) const { return out_sum_[r]; } // sum of O_i over block r

    // Edge counts from `node` to each block, self-loops excluded.  `counts`
    // is resized to B and zeroed on entry; `touched` lists blocks with a
    // nonzero count.
    void neighbor_block_counts(int node, std::vector<long long>& counts,
                               std::vector<int>& touched) const;

    void apply_move(int node, int to_block);

    // Full recount from the graph; used to audit the incremental updates.
    void rebuild();

private:
    std::size_t idx(int r, int s) const {
        return static_cast<std::size_t>(r) * block_count_ + s;
    }

    const Multigraph* graph_;
    int block_count_ = 0;
    std::vector<int> assignment_;
    std::vector<long long> m_;      // B x B, symmetric, m_rr = 2 * internal edges
    std::vector<long long> kappa_;  // degree sum per block
    std::vector<int> size_;         // nodes per block
    std::vector<int> k_plus_;       // per-node within-block degree
    NodeFactors factors_;
    std::vector<double> in_sum_, out_sum_;
    // scratch for apply_move
    mutable std::vector<long long> scratch_counts_;
    mutable std::vector<int> scratch_touched_;
};

} // namespace sbmkit
