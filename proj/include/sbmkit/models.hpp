#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sbmkit/block_stats.hpp"
#include "sbmkit/multigraph.hpp"

namespace sbmkit {

// Term used for an ordered block pair whose expected edge mass is zero while
// the observed count is positive (log-ratio would be -inf).
inline constexpr double kDegeneratePairPenalty = -10000.0;
// Floor inside entropy/factor logs so fully one-sided nodes stay finite.
inline constexpr double kLogFloor = 1e-10;

// Prior in-degree ratio f_i as a function of the node's total degree.
//  alpha form:  f(k) = alpha + (1 - alpha) / k
//  floor form:  f(k) = max(f_floor, 1 / k)
//  explicit:    per-node values supplied directly
struct PriorSpec {
    enum class Kind { AlphaForm, FloorForm, Explicit };
    Kind kind = Kind::AlphaForm;
    double alpha = 0.0;
    double f_floor = 0.0;
    std::vector<double> values; // Explicit only

    static PriorSpec alpha_form(double alpha);
    static PriorSpec floor_form(double f_floor);
    static PriorSpec explicit_values(std::vector<double> f);
};

double prior_ratio(const PriorSpec& spec, int degree);
std::vector<double> prior_ratios(const PriorSpec& spec, const Multigraph& g);

// Node factors (I_i, O_i) = (f_i * theta_i, (1 - f_i) * theta_i).
// theta defaults to the node degree when not supplied.
NodeFactors node_factors(const PriorSpec& spec, const Multigraph& g,
                         const std::vector<double>* theta = nullptr);

struct OmegaMatrix {
    int block_count = 0;
    std::vector<double> values; // row-major B x B

    OmegaMatrix() = default;
    explicit OmegaMatrix(int b) : block_count(b), values(static_cast<std::size_t>(b) * b, 0.0) {}
    double& at(int r, int s) { return values[static_cast<std::size_t>(r) * block_count + s]; }
    double at(int r, int s) const { return values[static_cast<std::size_t>(r) * block_count + s]; }
};

struct OmegaEstimate {
    OmegaMatrix omega;
    // flags pairs where the denominator vanished while edges are present
    std::vector<std::uint8_t> degenerate;
    bool any_degenerate = false;
};

struct DcsbmParams {
    std::vector<double> beta; // per-node degree share within its block
    OmegaMatrix omega;
};

// Profile log-likelihoods (natural log, ordered-pair sums, 0 ln 0 = 0,
// constants independent of the partition dropped).
double ssbm_objective(const BlockStats& stats);
double dcsbm_objective(const BlockStats& stats);
double rsbm_objective(const BlockStats& stats, const PriorSpec& spec,
                      const std::vector<double>* theta = nullptr);
double general_objective(const BlockStats& stats, const NodeFactors& factors);
// Per-edge information form: degree-corrected block KL minus twice the mean
// edge-end entropy of within-block degree fractions.
double information_form_objective(const BlockStats& stats);

enum class ModelKind { Ssbm, Dcsbm, Rsbm };
ModelKind parse_model_kind(const std::string& name);
std::string model_kind_name(ModelKind kind);

// Maximum-likelihood rate matrix omega_rs = m_rs / Lambda_rs given factors.
OmegaEstimate mle_omega(const BlockStats& stats, const NodeFactors& factors);
// Degree-corrected MLE: beta_i = k_i / kappa_{g_i}, omega_rs = m_rs.
DcsbmParams dcsbm_mle_params(const BlockStats& stats);

// Objective bound to a (model, graph, prior) triple: value, and the change
// from moving one node, computed touching only the affected rows.
class Objective {
public:
    Objective(ModelKind kind, const Multigraph& g, PriorSpec spec = {},
              const std::vector<double>* theta = nullptr);

    ModelKind kind() const { return kind_; }
    const NodeFactors& factors() const { return factors_; }
    const std::vector<double>& prior() const { return f_; }

    double value(const BlockStats& stats) const;
    double delta(const BlockStats& stats, int node, int to_block) const;

private:
    ModelKind kind_;
    const Multigraph* graph_;
    std::vector<double> f_;       // prior ratios (rsbm only)
    NodeFactors factors_;         // rsbm: I, O; unused otherwise
    double node_term_ = 0.0;      // partition-independent entropy part (rsbm)
};

// Convenience wrapper matching the Objective bound to `stats.graph()`.
double delta_objective(const BlockStats& stats, int node, int to_block,
                       const Objective& objective);

// Self-consistent propensities for the regularized model at fixed partition
// and prior ratios.  Iterates the stationarity condition from theta = k until
// the max relative change drops below `tol`.  Throws FitThetaError with the
// last iterate and residual if it fails to settle.
struct FitThetaError : std::runtime_error {
    FitThetaError(std::string message, std::vector<double> last, double residual_);
    std::vector<double> last_iterate;
    double residual;
};

std::vector<double> fit_theta(const BlockStats& stats, const PriorSpec& spec,
                              double tol = 1e-10, int max_iterations = 10000);

} // namespace sbmkit
