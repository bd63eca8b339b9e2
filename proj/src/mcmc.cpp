#include "sbmkit/mcmc.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "sbmkit/metrics.hpp"

namespace sbmkit {

Chain::Chain(const Multigraph& g, const Objective& objective, Partition init,
             double epsilon, std::uint64_t seed)
    : graph_(&g), objective_(&objective), stats_(g, std::move(init)),
      epsilon_(epsilon), rng_(seed) {
    if (epsilon_ <= 0.0)
        throw std::invalid_argument("chain: epsilon must be positive");
    if (objective.kind() == ModelKind::Rsbm)
        stats_.attach_factors(objective.factors());
    value_ = objective_->value(stats_);
    order_.resize(g.node_count());
    std::iota(order_.begin(), order_.end(), 0);
    counts_.assign(stats_.block_count(), 0);
}

int Chain::propose(int node) {
    const int B = stats_.block_count();
    const int k = graph_->degree(node);
    if (k == 0)
        return static_cast<int>(rng_.uniform_below(B));
    const auto& ends = graph_->neighbors(node);
    const int end = ends[rng_.uniform_below(ends.size())];
    const int t = stats_.block_of(end); // own block when the end is a loop
    const double total = static_cast<double>(stats_.block_degree(t)) + epsilon_ * B;
    double u = rng_.uniform01() * total;
    for (int s = 0; s < B; ++s) {
        u -= static_cast<double>(stats_.edges_between(t, s)) + epsilon_;
        if (u <= 0.0) return s;
    }
    return B - 1;
}

double Chain::log_acceptance(const BlockStats& stats, int node, int to_block,
                             double delta) const {
    const int from = stats.block_of(node);
    if (from == to_block) return 0.0;
    const int k = graph_->degree(node);
    if (k == 0) return std::min(0.0, delta); // uniform proposal is symmetric
    const int B = stats.block_count();

    stats.neighbor_block_counts(node, counts_, touched_);
    const long long loops2 = graph_->adjacency_count(node, node);
    const double eps_b = epsilon_ * B;

    double q_forward = 0.0, q_reverse = 0.0;
    for (int t = 0; t < B; ++t) {
        const long long ends_now = counts_[t] + (t == from ? loops2 : 0);
        const long long ends_after = counts_[t] + (t == to_block ? loops2 : 0);
        if (ends_now == 0 && ends_after == 0) continue;

        if (ends_now > 0) {
            const double w = static_cast<double>(stats.edges_between(t, to_block)) + epsilon_;
            q_forward += ends_now * w / (static_cast<double>(stats.block_degree(t)) + eps_b);
        }
        if (ends_after > 0) {
            long long m_t_from;
            if (t == from)
                m_t_from = stats.edges_between(from, from) - 2 * counts_[from] - loops2;
            else if (t == to_block)
                m_t_from = stats.edges_between(from, to_block) + counts_[from] - counts_[to_block];
            else
                m_t_from = stats.edges_between(t, from) - counts_[t];
            long long kappa_t = stats.block_degree(t);
            if (t == from) kappa_t -= k;
            else if (t == to_block) kappa_t += k;
            q_reverse += ends_after * (static_cast<double>(m_t_from) + epsilon_) /
                         (static_cast<double>(kappa_t) + eps_b);
        }
    }
    return std::min(0.0, delta + std::log(q_reverse) - std::log(q_forward));
}

double Chain::acceptance_probability(int node, int to_block, double delta) const {
    return std::exp(log_acceptance(stats_, node, to_block, delta));
}

bool Chain::step(int node) {
    const int to_block = propose(node);
    if (to_block == stats_.block_of(node))
        return true; // self-move: accepted, state unchanged
    if (force_reject_)
        return false;
    const double delta = objective_->delta(stats_, node, to_block);
    const double log_a = log_acceptance(stats_, node, to_block, delta);
    // exp underflows to 0 for strongly penalized moves, so they never pass
    if (rng_.uniform01() >= std::exp(log_a))
        return false;
    stats_.apply_move(node, to_block);
    value_ += delta;
    return true;
}

double Chain::sweep() {
    rng_.shuffle(order_);
    long long accepted = 0;
    for (int node : order_)
        if (step(node)) ++accepted;
    ++sweeps_done_;
    if (sweeps_done_ % 256 == 0)
        value_ = objective_->value(stats_); // shed accumulated float drift
    return order_.empty() ? 1.0 : static_cast<double>(accepted) / order_.size();
}

double Chain::recompute_objective() {
    value_ = objective_->value(stats_);
    return value_;
}

namespace {

void validate_config(const McmcConfig& config) {
    if (config.block_count < 1)
        throw std::invalid_argument("mcmc: block_count must be >= 1");
    if (config.epsilon <= 0.0)
        throw std::invalid_argument("mcmc: epsilon must be positive");
    if (config.sweeps < 0)
        throw std::invalid_argument("mcmc: negative sweep count");
    if (config.record_every < 1)
        throw std::invalid_argument("mcmc: record_every must be >= 1");
}

} // namespace

Trace run_trial(const Multigraph& g, const McmcConfig& config, const Partition* init) {
    validate_config(config);
    const Objective objective(config.model, g, config.prior);

    Partition start;
    Rng seed_rng(config.seed);
    if (init) {
        if (init->size() != g.node_count())
            throw std::invalid_argument("mcmc: init partition size != node count");
        start = *init;
        start.block_count = std::max(start.block_count, config.block_count);
    } else {
        std::vector<int> assignment(g.node_count());
        for (auto& b : assignment)
            b = static_cast<int>(seed_rng.uniform_below(config.block_count));
        start = Partition(std::move(assignment), config.block_count);
    }

    Chain chain(g, objective, start, config.epsilon, seed_rng.next_u64());

    Trace trace;
    trace.initial_partition = chain.stats().partition();
    auto record = [&](long long step, double acceptance) {
        TraceRecord rec;
        rec.step = step;
        rec.objective = chain.objective_value();
        rec.acceptance = acceptance;
        if (config.record_partitions)
            rec.assignment = chain.stats().assignment();
        if (trace.records.empty() || rec.objective > trace.best_objective) {
            trace.best_objective = rec.objective;
            trace.best_partition = chain.stats().partition();
        }
        trace.records.push_back(std::move(rec));
    };

    record(0, 0.0);
    double acceptance_total = 0.0;
    if (config.record_per_move) {
        std::vector<int> order(g.node_count());
        std::iota(order.begin(), order.end(), 0);
        long long move = 0;
        for (int s = 0; s < config.sweeps; ++s) {
            chain.rng().shuffle(order);
            long long accepted = 0;
            for (int node : order) {
                const bool ok = chain.step(node);
                accepted += ok ? 1 : 0;
                record(++move, ok ? 1.0 : 0.0);
            }
            acceptance_total += order.empty() ? 1.0 : static_cast<double>(accepted) / order.size();
        }
    } else {
        for (int s = 1; s <= config.sweeps; ++s) {
            const double acceptance = chain.sweep();
            acceptance_total += acceptance;
            if (s % config.record_every == 0 || s == config.sweeps)
                record(s, acceptance);
        }
    }
    trace.final_partition = chain.stats().partition();
    trace.final_objective = chain.recompute_objective();
    trace.mean_acceptance = config.sweeps > 0 ? acceptance_total / config.sweeps : 0.0;
    return trace;
}

std::vector<Trace> run_trials(const Multigraph& g, const McmcConfig& config, int trials,
                              int threads, const Partition* init) {
    if (trials < 0)
        throw std::invalid_argument("mcmc: negative trial count");
    std::vector<Trace> traces(trials);
    auto run_range = [&](std::atomic<int>& cursor) {
        while (true) {
            const int i = cursor.fetch_add(1);
            if (i >= trials) break;
            McmcConfig local = config;
            local.seed = config.seed + static_cast<std::uint64_t>(i);
            traces[i] = run_trial(g, local, init);
        }
    };
    std::atomic<int> cursor{0};
    const int workers = std::max(1, std::min(threads, trials));
    if (workers == 1) {
        run_range(cursor);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] { run_range(cursor); });
        for (auto& t : pool)
            t.join();
    }
    return traces;
}

std::vector<AnnealStep> anneal_f(const Multigraph& g, const std::vector<double>& schedule,
                                 const McmcConfig& base) {
    if (schedule.empty())
        throw std::invalid_argument("anneal_f: empty schedule");
    if (base.model != ModelKind::Rsbm)
        throw std::invalid_argument("anneal_f: prior sweep applies to the regularized model");
    if (base.prior.kind == PriorSpec::Kind::Explicit)
        throw std::invalid_argument("anneal_f: explicit priors have no parameter to sweep");
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        if (schedule[j] <= 0.0 || schedule[j] > 1.0)
            throw std::invalid_argument("anneal_f: schedule values must lie in (0, 1]");
        if (j > 0 && schedule[j] <= schedule[j - 1])
            throw std::invalid_argument("anneal_f: schedule must be strictly increasing");
    }

    std::vector<AnnealStep> steps;
    steps.reserve(schedule.size());
    Partition warm;
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        McmcConfig config = base;
        config.prior = base.prior.kind == PriorSpec::Kind::AlphaForm
                           ? PriorSpec::alpha_form(schedule[j])
                           : PriorSpec::floor_form(schedule[j]);
        config.seed = base.seed + static_cast<std::uint64_t>(j);
        const Trace trace = run_trial(g, config, j == 0 ? nullptr : &warm);
        warm = trace.final_partition;

        BlockStats final_stats(g, trace.final_partition);
        AnnealStep step;
        step.f = schedule[j];
        step.objective = trace.final_objective;
        step.partition = trace.final_partition;
        step.coverage = coverage(final_stats);
        step.modularity = modularity(final_stats);
        steps.push_back(std::move(step));
    }
    return steps;
}

} // namespace sbmkit
