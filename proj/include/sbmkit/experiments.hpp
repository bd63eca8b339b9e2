#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sbmkit/mcmc.hpp"
#include "sbmkit/metrics.hpp"
#include "sbmkit/models.hpp"
#include "sbmkit/multigraph.hpp"

namespace sbmkit {

// ---- bundled datasets -------------------------------------------------------

struct DatasetInfo {
    std::string id;
    std::string file;
    std::string groundtruth; // empty when none bundled
    int blocks = 2;
    int nodes = 0;
    long long edges = 0; // after collapsing duplicates (the papers treat these as simple)
};

const std::vector<DatasetInfo>& dataset_registry();
const DatasetInfo& dataset_info(const std::string& id); // throws on unknown id

// Loads, collapses multi-edges, and validates the node/edge counts against
// the registry.  Throws with an actionable message when the file is absent
// (the dolphin network is not redistributed here).
Multigraph load_dataset(const std::string& id, const std::string& data_dir);
// Ground-truth split read as "<label> <block>" lines, mapped onto g's ids.
Partition load_groundtruth(const Multigraph& g, const std::string& path);

// ---- twin-stars table -------------------------------------------------------

Partition twin_stars_core_periphery(); // hubs vs leaves
Partition twin_stars_twisted();        // each hub grouped with the other's leaves
Partition twin_stars_assortative();    // each hub with its own leaves

struct TwinStarsTable {
    std::array<std::string, 5> row_names;
    std::array<std::string, 3> column_names;
    double values[5][3] = {};
    int argmax[5] = {};
};
TwinStarsTable twin_stars_table();

// ---- landscape sampling -----------------------------------------------------

struct LandscapePoint {
    double x = 0.0, y = 0.0, objective = 0.0;
    int trial = -1; // -1 marks an interpolated partition
    long long step = -1;
};

// Union of recorded partitions (deduplicated) plus interpolations of random
// pairs, capped by uniform subsampling; coordinates from classical MDS over
// pairwise partition distances.
std::vector<LandscapePoint> build_landscape(const Multigraph& g, const Objective& objective,
                                            const std::vector<Trace>& traces, int cap,
                                            std::uint64_t seed);

// ---- experiment runners -----------------------------------------------------

struct ExperimentCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExperimentResult {
    std::string id;
    std::vector<ExperimentCheck> checks;
    bool all_passed() const;
};

// Fixed synthetic instance for the convergence runs: 2 planted blocks of 10
// nodes, power-law degrees (exponent 2.5), pairwise rates omega_{rs} k_i k_j
// with omega0 = 0.01, gamma = 10.
inline constexpr std::uint64_t kConvergenceInstanceSeed = 7;

struct ConvergenceInstance {
    Multigraph graph;
    Partition planted;
};
ConvergenceInstance convergence_instance(std::uint64_t seed = kConvergenceInstanceSeed);

// Cluster per-trial best objectives into plateaus (descending levels) and
// report when each trial first came within `top_band` of the top level.
struct PlateauSummary {
    std::vector<double> levels;
    std::vector<int> counts;
    std::vector<long long> reach_step; // -1 when a trial never reaches the top
};
PlateauSummary plateau_summary(const std::vector<Trace>& traces, double top_band = 1e-6,
                               double gap = 1.0);

// Runners write CSV/JSON outputs plus a manifest under out_dir (skipped when
// out_dir is empty) and return the embedded checks.
ExperimentResult run_twin_stars_table(const std::string& out_dir);
ExperimentResult run_convergence(ModelKind model, const std::string& out_dir,
                                 std::uint64_t seed = kDefaultSeed, int sweeps = 1000,
                                 int trials = 20, int threads = 1);
ExperimentResult run_coverage_vs_density(const std::string& dataset, const std::string& data_dir,
                                         const std::string& out_dir,
                                         std::uint64_t seed = kDefaultSeed, int sweeps = 1000,
                                         int trials = 20, int threads = 1);
ExperimentResult run_f_sweep(const std::string& dataset, const std::string& data_dir,
                             const std::string& out_dir, std::uint64_t seed = kDefaultSeed,
                             int sweeps = 1000, int threads = 1);

// Shared 5-decimal float formatting for CSV/JSON payloads.
std::string format_value(double x);

} // namespace sbmkit
