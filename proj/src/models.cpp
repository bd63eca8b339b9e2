#include "sbmkit/models.hpp"

#include <algorithm>
#include <cmath>

namespace sbmkit {

namespace {

double floored_log(double x) { return std::log(std::max(x, kLogFloor)); }

// m ln(m / lambda) for one ordered block pair, 0 ln 0 = 0, vanished lambda
// against observed edges pinned to the fixed penalty
double pair_term(long long m, double lambda) {
    if (m == 0) return 0.0;
    if (lambda <= 0.0) return kDegeneratePairPenalty;
    return static_cast<double>(m) * std::log(static_cast<double>(m) / lambda);
}

// sum of pair terms over all ordered pairs, lambda supplied per pair
template <typename LambdaFn>
double pair_sum(const BlockStats& stats, LambdaFn lambda) {
    const int B = stats.block_count();
    double total = 0.0;
    for (int r = 0; r < B; ++r)
        for (int s = 0; s < B; ++s)
            total += pair_term(stats.edges_between(r, s), lambda(r, s));
    return total;
}

} // namespace

PriorSpec PriorSpec::alpha_form(double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("prior: alpha must lie in [0, 1]");
    PriorSpec spec;
    spec.kind = Kind::AlphaForm;
    spec.alpha = alpha;
    return spec;
}

PriorSpec PriorSpec::floor_form(double f_floor) {
    if (f_floor <= 0.0 || f_floor > 1.0)
        throw std::invalid_argument("prior: floor must lie in (0, 1]");
    PriorSpec spec;
    spec.kind = Kind::FloorForm;
    spec.f_floor = f_floor;
    return spec;
}

PriorSpec PriorSpec::explicit_values(std::vector<double> f) {
    for (double v : f)
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("prior: explicit ratios must lie in [0, 1]");
    PriorSpec spec;
    spec.kind = Kind::Explicit;
    spec.values = std::move(f);
    return spec;
}

double prior_ratio(const PriorSpec& spec, int degree) {
    if (spec.kind == PriorSpec::Kind::Explicit)
        throw std::invalid_argument("prior: explicit ratios are per node, not per degree");
    if (degree < 1)
        throw std::invalid_argument("prior: degree must be >= 1");
    const double k = degree;
    switch (spec.kind) {
    case PriorSpec::Kind::AlphaForm:
        return spec.alpha + (1.0 - spec.alpha) / k;
    case PriorSpec::Kind::FloorForm:
        return std::max(spec.f_floor, 1.0 / k);
    default:
        return 1.0;
    }
}

std::vector<double> prior_ratios(const PriorSpec& spec, const Multigraph& g) {
    const int n = g.node_count();
    if (spec.kind == PriorSpec::Kind::Explicit) {
        if (static_cast<int>(spec.values.size()) != n)
            throw std::invalid_argument("prior: explicit ratio count != node count");
        return spec.values;
    }
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i)
        f[i] = prior_ratio(spec, g.degree(i));
    return f;
}

NodeFactors node_factors(const PriorSpec& spec, const Multigraph& g,
                         const std::vector<double>* theta) {
    const int n = g.node_count();
    if (theta && static_cast<int>(theta->size()) != n)
        throw std::invalid_argument("node_factors: theta size != node count");
    const std::vector<double> f = prior_ratios(spec, g);
    NodeFactors factors;
    factors.in.resize(n);
    factors.out.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = theta ? (*theta)[i] : static_cast<double>(g.degree(i));
        if (t < 0.0)
            throw std::invalid_argument("node_factors: negative theta");
        factors.in[i] = f[i] * t;
        factors.out[i] = (1.0 - f[i]) * t;
    }
    return factors;
}

double ssbm_objective(const BlockStats& stats) {
    return pair_sum(stats, [&](int r, int s) {
        return static_cast<double>(stats.block_size(r)) * stats.block_size(s);
    });
}

double dcsbm_objective(const BlockStats& stats) {
    return pair_sum(stats, [&](int r, int s) {
        return static_cast<double>(stats.block_degree(r)) * stats.block_degree(s);
    });
}

namespace {

struct FactorSums {
    std::vector<double> in, out;
};

FactorSums block_factor_sums(const BlockStats& stats, const NodeFactors& factors) {
    FactorSums sums;
    sums.in.assign(stats.block_count(), 0.0);
    sums.out.assign(stats.block_count(), 0.0);
    for (int i = 0; i < stats.node_count(); ++i) {
        const int r = stats.block_of(i);
        sums.in[r] += factors.in[i];
        sums.out[r] += factors.out[i];
    }
    return sums;
}

double factor_pair_sum(const BlockStats& stats, const FactorSums& sums) {
    return pair_sum(stats, [&](int r, int s) {
        return r == s ? sums.in[r] * sums.in[r] : sums.out[r] * sums.out[s];
    });
}

} // namespace

double rsbm_objective(const BlockStats& stats, const PriorSpec& spec,
                      const std::vector<double>* theta) {
    const Multigraph& g = stats.graph();
    const std::vector<double> f = prior_ratios(spec, g);
    const NodeFactors factors = node_factors(spec, g, theta);
    const FactorSums sums = block_factor_sums(stats, factors);
    double total = factor_pair_sum(stats, sums);
    // -2 sum_i k_i H(k_i^+ / k_i, f_i), expanded to integer weights
    for (int i = 0; i < stats.node_count(); ++i) {
        const int k_in = stats.degree_within(i);
        const int k_out = stats.degree_across(i);
        if (k_in > 0) total += 2.0 * k_in * floored_log(f[i]);
        if (k_out > 0) total += 2.0 * k_out * floored_log(1.0 - f[i]);
    }
    return total;
}

double general_objective(const BlockStats& stats, const NodeFactors& factors) {
    if (static_cast<int>(factors.in.size()) != stats.node_count() ||
        static_cast<int>(factors.out.size()) != stats.node_count())
        throw std::invalid_argument("general_objective: factor size != node count");
    const FactorSums sums = block_factor_sums(stats, factors);
    double total = factor_pair_sum(stats, sums);
    for (int i = 0; i < stats.node_count(); ++i) {
        const int k_in = stats.degree_within(i);
        const int k_out = stats.degree_across(i);
        if (k_in > 0) total += 2.0 * k_in * floored_log(factors.in[i]);
        if (k_out > 0) total += 2.0 * k_out * floored_log(factors.out[i]);
    }
    return total;
}

double information_form_objective(const BlockStats& stats) {
    const double two_m = static_cast<double>(stats.total_degree());
    if (two_m <= 0.0) return 0.0;
    const int B = stats.block_count();
    double kl = 0.0;
    for (int r = 0; r < B; ++r) {
        for (int s = 0; s < B; ++s) {
            const long long m_rs = stats.edges_between(r, s);
            if (m_rs == 0) continue;
            const double q =
                r == s ? (stats.block_degree_within(r) / two_m) *
                             (stats.block_degree_within(s) / two_m)
                       : (stats.block_degree_across(r) / two_m) *
                             (stats.block_degree_across(s) / two_m);
            kl += pair_term(m_rs, q * two_m) / two_m; // p ln(p/q), same clamps
        }
    }
    double entropy = 0.0; // mean edge-end entropy of within-degree fractions
    for (int i = 0; i < stats.node_count(); ++i) {
        const int k = stats.degree(i);
        if (k == 0) continue;
        const int k_in = stats.degree_within(i);
        const int k_out = k - k_in;
        double h = 0.0;
        if (k_in > 0) h -= (static_cast<double>(k_in) / k) * std::log(static_cast<double>(k_in) / k);
        if (k_out > 0) h -= (static_cast<double>(k_out) / k) * std::log(static_cast<double>(k_out) / k);
        entropy += (k / two_m) * h;
    }
    return kl - 2.0 * entropy;
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "ssbm") return ModelKind::Ssbm;
    if (name == "dcsbm") return ModelKind::Dcsbm;
    if (name == "rsbm") return ModelKind::Rsbm;
    throw std::invalid_argument("unknown model '" + name + "' (expected ssbm, dcsbm or rsbm)");
}

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::Ssbm: return "ssbm";
    case ModelKind::Dcsbm: return "dcsbm";
    case ModelKind::Rsbm: return "rsbm";
    }
    return "?";
}

OmegaEstimate mle_omega(const BlockStats& stats, const NodeFactors& factors) {
    const int B = stats.block_count();
    const FactorSums sums = block_factor_sums(stats, factors);
    OmegaEstimate est;
    est.omega = OmegaMatrix(B);
    est.degenerate.assign(static_cast<std::size_t>(B) * B, 0);
    for (int r = 0; r < B; ++r) {
        for (int s = 0; s < B; ++s) {
            const long long m_rs = stats.edges_between(r, s);
            const double lambda = r == s ? sums.in[r] * sums.in[r] : sums.out[r] * sums.out[s];
            if (lambda > 0.0) {
                est.omega.at(r, s) = m_rs / lambda;
            } else if (m_rs > 0) {
                est.degenerate[static_cast<std::size_t>(r) * B + s] = 1;
                est.any_degenerate = true;
            }
        }
    }
    return est;
}

DcsbmParams dcsbm_mle_params(const BlockStats& stats) {
    DcsbmParams params;
    params.beta.resize(stats.node_count());
    for (int i = 0; i < stats.node_count(); ++i) {
        const long long kappa = stats.block_degree(stats.block_of(i));
        params.beta[i] = kappa > 0 ? static_cast<double>(stats.degree(i)) / kappa : 0.0;
    }
    const int B = stats.block_count();
    params.omega = OmegaMatrix(B);
    for (int r = 0; r < B; ++r)
        for (int s = 0; s < B; ++s)
            params.omega.at(r, s) = static_cast<double>(stats.edges_between(r, s));
    return params;
}

Objective::Objective(ModelKind kind, const Multigraph& g, PriorSpec spec,
                     const std::vector<double>* theta)
    : kind_(kind), graph_(&g) {
    if (kind_ == ModelKind::Rsbm) {
        f_ = prior_ratios(spec, g);
        factors_ = node_factors(spec, g, theta);
    }
}

double Objective::value(const BlockStats& stats) const {
    switch (kind_) {
    case ModelKind::Ssbm:
        return ssbm_objective(stats);
    case ModelKind::Dcsbm:
        return dcsbm_objective(stats);
    case ModelKind::Rsbm: {
        FactorSums sums;
        if (stats.has_factors()) {
            sums.in.resize(stats.block_count());
            sums.out.resize(stats.block_count());
            for (int r = 0; r < stats.block_count(); ++r) {
                sums.in[r] = stats.in_sum(r);
                sums.out[r] = stats.out_sum(r);
            }
        } else {
            sums = block_factor_sums(stats, factors_);
        }
        double total = factor_pair_sum(stats, sums);
        for (int i = 0; i < stats.node_count(); ++i) {
            const int k_in = stats.degree_within(i);
            const int k_out = stats.degree_across(i);
            if (k_in > 0) total += 2.0 * k_in * floored_log(f_[i]);
            if (k_out > 0) total += 2.0 * k_out * floored_log(1.0 - f_[i]);
        }
        return total;
    }
    }
    return 0.0;
}

double Objective::delta(const BlockStats& stats, int node, int to_block) const {
    const int from = stats.block_of(node);
    if (from == to_block) return 0.0;
    const Multigraph& g = *graph_;
    const int B = stats.block_count();

    std::vector<long long> counts;
    std::vector<int> touched;
    stats.neighbor_block_counts(node, counts, touched);
    const long long loops2 = g.adjacency_count(node, node);
    const long long c_r = counts[from];
    const long long c_s = counts[to_block];

    // block weight sums entering lambda, before and after the move
    double in_r = 0.0, out_r = 0.0, in_s = 0.0, out_s = 0.0;
    auto weight = [&](int t, double& in_w, double& out_w) {
        switch (kind_) {
        case ModelKind::Ssbm:
            in_w = out_w = static_cast<double>(stats.block_size(t));
            return;
        case ModelKind::Dcsbm:
            in_w = out_w = static_cast<double>(stats.block_degree(t));
            return;
        case ModelKind::Rsbm:
            if (stats.has_factors()) {
                in_w = stats.in_sum(t);
                out_w = stats.out_sum(t);
            } else {
                in_w = out_w = 0.0;
                for (int i = 0; i < stats.node_count(); ++i) {
                    if (stats.block_of(i) != t) continue;
                    in_w += factors_.in[i];
                    out_w += factors_.out[i];
                }
            }
            return;
        }
    };
    weight(from, in_r, out_r);
    weight(to_block, in_s, out_s);
    double in_r2 = in_r, out_r2 = out_r, in_s2 = in_s, out_s2 = out_s;
    switch (kind_) {
    case ModelKind::Ssbm:
        in_r2 = out_r2 = in_r - 1.0;
        in_s2 = out_s2 = in_s + 1.0;
        break;
    case ModelKind::Dcsbm:
        in_r2 = out_r2 = in_r - g.degree(node);
        in_s2 = out_s2 = in_s + g.degree(node);
        break;
    case ModelKind::Rsbm:
        in_r2 = in_r - factors_.in[node];
        out_r2 = out_r - factors_.out[node];
        in_s2 = in_s + factors_.in[node];
        out_s2 = out_s + factors_.out[node];
        break;
    }

    auto lambda_before = [&](int a, int b) {
        double ia = 0.0, oa = 0.0, ib = 0.0, ob = 0.0;
        auto pick = [&](int t, double& in_w, double& out_w) {
            if (t == from) { in_w = in_r; out_w = out_r; }
            else if (t == to_block) { in_w = in_s; out_w = out_s; }
            else weight(t, in_w, out_w);
        };
        pick(a, ia, oa);
        pick(b, ib, ob);
        return a == b ? ia * ib : oa * ob;
    };
    auto lambda_after = [&](int a, int b) {
        double ia = 0.0, oa = 0.0, ib = 0.0, ob = 0.0;
        auto pick = [&](int t, double& in_w, double& out_w) {
            if (t == from) { in_w = in_r2; out_w = out_r2; }
            else if (t == to_block) { in_w = in_s2; out_w = out_s2; }
            else weight(t, in_w, out_w);
        };
        pick(a, ia, oa);
        pick(b, ib, ob);
        return a == b ? ia * ib : oa * ob;
    };

    // ordered pairs touching row/column `from` or `to_block`
    double before = 0.0, after = 0.0;
    for (int t = 0; t < B; ++t) {
        if (t == from || t == to_block) continue;
        const long long m_rt = stats.edges_between(from, t);
        const long long m_st = stats.edges_between(to_block, t);
        before += 2.0 * pair_term(m_rt, lambda_before(from, t));
        before += 2.0 * pair_term(m_st, lambda_before(to_block, t));
        after += 2.0 * pair_term(m_rt - counts[t], lambda_after(from, t));
        after += 2.0 * pair_term(m_st + counts[t], lambda_after(to_block, t));
    }
    const long long m_rr = stats.edges_between(from, from);
    const long long m_ss = stats.edges_between(to_block, to_block);
    const long long m_rs = stats.edges_between(from, to_block);
    before += pair_term(m_rr, lambda_before(from, from));
    before += pair_term(m_ss, lambda_before(to_block, to_block));
    before += 2.0 * pair_term(m_rs, lambda_before(from, to_block));
    after += pair_term(m_rr - 2 * c_r - loops2, lambda_after(from, from));
    after += pair_term(m_ss + 2 * c_s + loops2, lambda_after(to_block, to_block));
    after += 2.0 * pair_term(m_rs + c_r - c_s, lambda_after(from, to_block));

    double delta = after - before;

    if (kind_ == ModelKind::Rsbm) {
        // entropy part: sum_i k_i^+ w_i + const, w_i = 2(ln f_i - ln(1 - f_i))
        auto w = [&](int i) { return 2.0 * (floored_log(f_[i]) - floored_log(1.0 - f_[i])); };
        delta += (c_s - c_r) * w(node); // node's own k^+ shift (loops cancel)
        for (int end : g.neighbors(node)) {
            if (end == node) continue;
            const int t = stats.block_of(end);
            if (t == from) delta -= w(end);
            else if (t == to_block) delta += w(end);
        }
    }
    return delta;
}

double delta_objective(const BlockStats& stats, int node, int to_block,
                       const Objective& objective) {
    return objective.delta(stats, node, to_block);
}

FitThetaError::FitThetaError(std::string message, std::vector<double> last, double residual_)
    : std::runtime_error(std::move(message)), last_iterate(std::move(last)), residual(residual_) {}

std::vector<double> fit_theta(const BlockStats& stats, const PriorSpec& spec,
                              double tol, int max_iterations) {
    const Multigraph& g = stats.graph();
    const int n = g.node_count();
    for (int i = 0; i < n; ++i)
        if (g.degree(i) == 0)
            throw std::invalid_argument("fit_theta: node " + std::to_string(i) +
                                        " has degree zero");
    const std::vector<double> f = prior_ratios(spec, g);
    const int B = stats.block_count();
    std::vector<double> theta(n), next(n);
    for (int i = 0; i < n; ++i)
        theta[i] = static_cast<double>(g.degree(i));

    std::vector<double> s_in(B), s_out(B);
    double residual = 0.0;
    for (int iter = 0; iter < max_iterations; ++iter) {
        std::fill(s_in.begin(), s_in.end(), 0.0);
        std::fill(s_out.begin(), s_out.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const int r = stats.block_of(i);
            s_in[r] += f[i] * theta[i];
            s_out[r] += (1.0 - f[i]) * theta[i];
        }
        for (int i = 0; i < n; ++i) {
            const int r = stats.block_of(i);
            const long long within = stats.block_degree_within(r);
            const long long across = stats.block_degree(r) - within;
            double denom = 0.0;
            if (within > 0) {
                if (s_in[r] <= 0.0)
                    throw FitThetaError("fit_theta: block " + std::to_string(r) +
                                            " has within-block edges but zero in-weight",
                                        theta, residual);
                denom += f[i] * within / s_in[r];
            }
            if (across > 0) {
                if (s_out[r] <= 0.0)
                    throw FitThetaError("fit_theta: block " + std::to_string(r) +
                                            " has cross-block edges but zero out-weight",
                                        theta, residual);
                denom += (1.0 - f[i]) * across / s_out[r];
            }
            if (denom <= 0.0)
                throw FitThetaError("fit_theta: node " + std::to_string(i) +
                                        " has no edge mass to balance",
                                    theta, residual);
            next[i] = g.degree(i) / denom;
        }
        // gauge: propensities are per-block scale free, pin sum to kappa_r
        std::fill(s_in.begin(), s_in.end(), 0.0);
        for (int i = 0; i < n; ++i)
            s_in[stats.block_of(i)] += next[i];
        for (int i = 0; i < n; ++i) {
            const int r = stats.block_of(i);
            if (s_in[r] > 0.0)
                next[i] *= stats.block_degree(r) / s_in[r];
        }
        residual = 0.0;
        for (int i = 0; i < n; ++i) {
            const double change = std::abs(next[i] - theta[i]) / std::max(theta[i], 1e-300);
            residual = std::max(residual, change);
        }
        theta.swap(next);
        if (residual < tol) return theta;
    }
    throw FitThetaError("fit_theta: no convergence after " + std::to_string(max_iterations) +
                            " iterations (residual " + std::to_string(residual) + ")",
                        theta, residual);
}

} // namespace sbmkit
