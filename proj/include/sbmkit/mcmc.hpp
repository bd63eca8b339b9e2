#pragma once

#include <cstdint>
#include <vector>

#include "sbmkit/block_stats.hpp"
#include "sbmkit/models.hpp"
#include "sbmkit/multigraph.hpp"
#include "sbmkit/rng.hpp"

namespace sbmkit {

inline constexpr std::uint64_t kDefaultSeed = 20260819;

struct McmcConfig {
    ModelKind model = ModelKind::Dcsbm;
    PriorSpec prior{};   // regularized model only
    int block_count = 2;
    double epsilon = 0.1;     // proposal smoothing
    int sweeps = 1000;
    int record_every = 1;     // in sweeps
    bool record_per_move = false;
    bool record_partitions = true;
    std::uint64_t seed = kDefaultSeed;
};

struct TraceRecord {
    long long step = 0; // sweep index, or move index with record_per_move
    double objective = 0.0;
    double acceptance = 0.0; // fraction accepted in the sweep ending here
    std::vector<int> assignment;
};

struct Trace {
    std::vector<TraceRecord> records;
    Partition initial_partition;
    Partition final_partition;
    double final_objective = 0.0;
    Partition best_partition; // best over recorded points
    double best_objective = 0.0;
    double mean_acceptance = 0.0;
};

// Single-node-move Metropolis-Hastings chain.  Proposals pick a random
// incident edge end, read its block t, then draw the destination with weight
// m_ts + epsilon; isolated nodes propose uniformly.  The acceptance ratio
// uses the reverse proposal evaluated on post-move counts.
class Chain {
public:
    Chain(const Multigraph& g, const Objective& objective, Partition init,
          double epsilon, std::uint64_t seed);

    int propose(int node);
    // ln of the Hastings ratio given the objective change of the move;
    // 0 when to_block equals the current block
    double log_acceptance(const BlockStats& stats_now, int node, int to_block,
                          double delta) const;
    double acceptance_probability(int node, int to_block, double delta) const;
    bool step(int node); // propose + accept/reject; true when the state moved or stayed by acceptance
    double sweep();      // every node once in random order; returns acceptance fraction

    const BlockStats& stats() const { return stats_; }
    double objective_value() const { return value_; }
    double recompute_objective(); // audit hook: rebuild value from scratch
    Rng& rng() { return rng_; }
    // test hook: reject every non-self proposal (freezes the partition)
    void force_reject(bool on) { force_reject_ = on; }

private:
    const Multigraph* graph_;
    const Objective* objective_;
    BlockStats stats_;
    double value_ = 0.0;
    double epsilon_;
    Rng rng_;
    bool force_reject_ = false;
    long long sweeps_done_ = 0;
    std::vector<int> order_;
    // scratch
    mutable std::vector<long long> counts_;
    mutable std::vector<int> touched_;
};

Trace run_trial(const Multigraph& g, const McmcConfig& config,
                const Partition* init = nullptr);

// `trials` independent chains seeded config.seed + trial index.  Results are
// identical for any thread count.
std::vector<Trace> run_trials(const Multigraph& g, const McmcConfig& config, int trials,
                              int threads = 1, const Partition* init = nullptr);

struct AnnealStep {
    double f = 0.0;
    double objective = 0.0;
    Partition partition; // final partition at this prior setting
    double coverage = 0.0;
    double modularity = 0.0;
};

// Sweep the prior parameter along `schedule` (same functional form as
// base.prior), warm-starting each run from the previous final partition.
std::vector<AnnealStep> anneal_f(const Multigraph& g, const std::vector<double>& schedule,
                                 const McmcConfig& base);

} // namespace sbmkit
