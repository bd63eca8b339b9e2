// sbm: command-line front end for the block-model library.
//
// Subcommands: generate, score, infer, sweep-f, landscape, experiment.
// Exit codes: 0 ok, 1 runtime failure, 2 usage, 3 an embedded result check
// failed.  All file output lands under --out-dir (SBMKIT_OUT_DIR overrides
// the default); every file-writing subcommand drops a manifest.json that
// pins the inputs, so a rerun with the same argv and seed reproduces the
// output tree byte for byte.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbmkit/experiments.hpp"
#include "sbmkit/generators.hpp"
#include "sbmkit/mcmc.hpp"
#include "sbmkit/metrics.hpp"
#include "sbmkit/models.hpp"
#include "sbmkit/multigraph.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sbmkit;

namespace {

// thrown when an experiment's embedded checks fail (exit 3, not 1)
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& text) {
    if (text == "random") {
        std::random_device device;
        return (static_cast<std::uint64_t>(device()) << 32) ^ device();
    }
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(text, &used);
    if (used != text.size())
        throw CLI::ValidationError("--seed", "expected an integer or 'random'");
    return value;
}

double rounded(double x) { return std::stod(format_value(x)); }

std::ofstream open_file(const fs::path& path) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_json(const fs::path& path, const json& payload) {
    auto out = open_file(path);
    out << payload.dump(2) << '\n';
}

// accepts node/block text, a bare JSON array, or an object carrying an
// "assignment" array (the shape infer writes to best_partition.json)
Partition load_partition_file(const std::string& path, int block_count = 0) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open partition: " + path);
    char first = 0;
    while (in.get(first) && std::isspace(static_cast<unsigned char>(first))) {
    }
    if (first != '{') return load_partition(path, block_count);
    in.clear();
    in.seekg(0);
    const json payload = json::parse(in);
    if (!payload.contains("assignment") || !payload["assignment"].is_array())
        throw std::runtime_error("partition object in " + path +
                                 " must carry an \"assignment\" array");
    std::vector<int> assignment;
    int top = 0;
    for (const auto& entry : payload["assignment"]) {
        assignment.push_back(entry.get<int>());
        top = std::max(top, assignment.back() + 1);
    }
    return Partition(assignment, std::max(block_count, std::max(top, 1)));
}

// shared model/prior flag bundle for score, infer, sweep-f, and landscape
struct ModelFlags {
    std::string model = "dcsbm";
    double alpha = -1.0;
    double f_floor = -1.0;
    std::string theta = "degree";

    void attach(CLI::App* cmd, bool with_theta = true) {
        cmd->add_option("--model", model, "objective: ssbm, dcsbm, or rsbm")
            ->check(CLI::IsMember({"ssbm", "dcsbm", "rsbm"}));
        cmd->add_option("--alpha", alpha, "rsbm prior f(k) = alpha + (1 - alpha)/k");
        cmd->add_option("--f-floor", f_floor, "rsbm prior f(k) = max(f, 1/k)");
        if (with_theta)
            cmd->add_option("--theta", theta, "rsbm propensities: node degree, or self-consistent fit")
                ->check(CLI::IsMember({"degree", "fit"}));
    }

    ModelKind kind() const { return parse_model_kind(model); }

    PriorSpec prior() const {
        if (kind() != ModelKind::Rsbm) {
            if (alpha >= 0.0 || f_floor >= 0.0)
                throw CLI::ValidationError("--alpha/--f-floor", "prior flags apply to --model rsbm");
            return {};
        }
        if (alpha >= 0.0 && f_floor >= 0.0)
            throw CLI::ValidationError("--alpha", "give either --alpha or --f-floor, not both");
        if (f_floor >= 0.0) return PriorSpec::floor_form(f_floor);
        return PriorSpec::alpha_form(alpha >= 0.0 ? alpha : 0.8);
    }

    json describe() const {
        json desc = {{"model", model}};
        if (kind() == ModelKind::Rsbm) {
            const PriorSpec spec = prior();
            if (spec.kind == PriorSpec::Kind::FloorForm)
                desc["prior"] = {{"form", "floor"}, {"f", rounded(spec.f_floor)}};
            else
                desc["prior"] = {{"form", "alpha"}, {"alpha", rounded(spec.alpha)}};
            desc["theta"] = theta;
        }
        return desc;
    }
};

json partition_json(const std::vector<int>& assignment) { return json(assignment); }

// ---- generate ----------------------------------------------------------------

struct GenerateArgs {
    std::string model = "dcsbm";
    int blocks = 2;
    int nodes_per_block = 10;
    double omega0 = 0.01;
    double gamma = 10.0;
    double exponent = 2.5;
    int k_min = 1;
    double alpha = 0.8;
    std::string out = "graph.txt";
};

void run_generate(const GenerateArgs& args, const fs::path& out_dir, std::uint64_t seed) {
    fs::create_directories(out_dir);
    const int n = args.blocks * args.nodes_per_block;
    std::vector<int> assignment(n);
    for (int i = 0; i < n; ++i)
        assignment[i] = i / args.nodes_per_block;

    Rng rng(seed);
    const OmegaMatrix omega = planted_omega(args.blocks, args.omega0, args.gamma);
    Multigraph g;
    if (args.model == "ssbm") {
        g = sample_ssbm(assignment, omega, rng);
    } else {
        const std::vector<int> degrees = sample_powerlaw_degrees(n, args.exponent, args.k_min, rng);
        if (args.model == "dcsbm") {
            g = sample_dcsbm(assignment, omega, std::vector<double>(degrees.begin(), degrees.end()),
                             rng);
        } else {
            const PriorSpec prior = PriorSpec::alpha_form(args.alpha);
            NodeFactors factors;
            factors.in.reserve(n);
            factors.out.reserve(n);
            for (int k : degrees) {
                const double f = prior_ratio(prior, k);
                factors.in.push_back(f * k);
                factors.out.push_back((1.0 - f) * k);
            }
            g = sample_rsbm(assignment, args.gamma * args.omega0, args.omega0, factors, rng);
        }
    }

    // persist with the ids a reload assigns, so planted.txt matches the file
    std::vector<int> id_map;
    const Multigraph saved = g.save_ordered(&id_map);
    std::vector<int> planted(saved.node_count(), 0);
    for (int i = 0; i < n; ++i)
        if (id_map[i] >= 0) planted[id_map[i]] = assignment[i];

    saved.save_edge_list((out_dir / args.out).string());
    save_partition_text(Partition(planted, args.blocks), (out_dir / "planted.txt").string());
    write_json(out_dir / "manifest.json",
               {{"command", "generate"},
                {"model", args.model},
                {"blocks", args.blocks},
                {"nodes_per_block", args.nodes_per_block},
                {"omega0", rounded(args.omega0)},
                {"gamma", rounded(args.gamma)},
                {"exponent", rounded(args.exponent)},
                {"k_min", args.k_min},
                {"alpha", args.model == "rsbm" ? json(rounded(args.alpha)) : json()},
                {"seed", seed},
                {"nodes", saved.node_count()},
                {"edges", saved.edge_count()},
                {"isolated_dropped", g.node_count() - saved.node_count()},
                {"outputs", {args.out, "planted.txt", "manifest.json"}}});
    std::cout << "wrote " << (out_dir / args.out).string() << " (" << saved.node_count()
              << " nodes, " << saved.edge_count() << " edges)\n";
}

// ---- score -------------------------------------------------------------------

void run_score(const std::string& graph_path, const std::string& partition_path,
               const ModelFlags& flags, bool simple) {
    Multigraph g = Multigraph::load_edge_list(graph_path);
    if (simple) g = g.simplified();
    const Partition partition = load_partition_file(partition_path);
    BlockStats stats(g, partition);

    double objective = 0.0;
    std::vector<double> theta;
    const ModelKind kind = flags.kind();
    switch (kind) {
    case ModelKind::Ssbm:
        objective = ssbm_objective(stats);
        break;
    case ModelKind::Dcsbm:
        objective = dcsbm_objective(stats);
        break;
    case ModelKind::Rsbm:
        if (flags.theta == "fit") {
            theta = fit_theta(stats, flags.prior());
            objective = rsbm_objective(stats, flags.prior(), &theta);
        } else {
            objective = rsbm_objective(stats, flags.prior());
        }
        break;
    }

    json breakdown;
    breakdown["nodes"] = g.node_count();
    breakdown["edges"] = g.edge_count();
    breakdown["blocks"] = partition.block_count;
    breakdown["coverage"] = rounded(coverage(stats));
    breakdown["modularity"] = rounded(modularity(stats));
    json sizes = json::array(), m_rows = json::array();
    for (int r = 0; r < partition.block_count; ++r) {
        sizes.push_back(stats.block_size(r));
        json row = json::array();
        for (int s = 0; s < partition.block_count; ++s)
            row.push_back(stats.edges_between(r, s));
        m_rows.push_back(row);
    }
    breakdown["block_sizes"] = sizes;
    breakdown["edges_between"] = m_rows;

    json result = flags.describe();
    result["objective"] = rounded(objective);
    result["breakdown"] = breakdown;
    if (!theta.empty()) {
        json fitted = json::array();
        for (double t : theta)
            fitted.push_back(rounded(t));
        result["theta_fitted"] = fitted;
    }
    std::cout << result.dump(2) << '\n';
}

// ---- infer -------------------------------------------------------------------

json trace_to_json(const Trace& trace, int trial, std::uint64_t seed) {
    json records = json::array();
    for (const auto& rec : trace.records) {
        json row = {{"sweep", rec.step},
                    {"objective", rounded(rec.objective)},
                    {"acceptance", rounded(rec.acceptance)}};
        if (!rec.assignment.empty())
            row["assignment"] = partition_json(rec.assignment);
        records.push_back(std::move(row));
    }
    return {{"trial", trial},
            {"seed", seed},
            {"initial_partition", partition_json(trace.initial_partition.assignment)},
            {"final_partition", partition_json(trace.final_partition.assignment)},
            {"best_partition", partition_json(trace.best_partition.assignment)},
            {"final_objective", rounded(trace.final_objective)},
            {"best_objective", rounded(trace.best_objective)},
            {"mean_acceptance", rounded(trace.mean_acceptance)},
            {"records", std::move(records)}};
}

struct InferArgs {
    std::string graph;
    std::string init = "random";
    int blocks = 2;
    double epsilon = 0.1;
    int sweeps = 1000;
    int trials = 20;
    int record_every = 1;
    bool no_partitions = false;
    bool simple = false;
};

void run_infer(const InferArgs& args, const ModelFlags& flags, const fs::path& out_dir,
               std::uint64_t seed, int threads) {
    Multigraph g = Multigraph::load_edge_list(args.graph);
    if (args.simple) g = g.simplified();

    McmcConfig config;
    config.model = flags.kind();
    config.prior = flags.prior();
    config.block_count = args.blocks;
    config.epsilon = args.epsilon;
    config.sweeps = args.sweeps;
    config.record_every = args.record_every;
    config.record_partitions = !args.no_partitions;
    config.seed = seed;

    Partition init;
    const Partition* init_ptr = nullptr;
    if (args.init != "random") {
        init = load_partition_file(args.init, args.blocks);
        init_ptr = &init;
    }

    const std::vector<Trace> traces = run_trials(g, config, args.trials, threads, init_ptr);

    auto summary = open_file(out_dir / "summary.csv");
    summary << "trial,best_objective,final_objective,coverage,modularity,mean_acceptance\n";
    int best_trial = 0;
    for (int t = 0; t < args.trials; ++t) {
        const Trace& trace = traces[t];
        const BlockStats stats(g, trace.final_partition);
        summary << t << ',' << format_value(trace.best_objective) << ','
                << format_value(trace.final_objective) << ',' << format_value(coverage(stats))
                << ',' << format_value(modularity(stats)) << ','
                << format_value(trace.mean_acceptance) << '\n';
        if (trace.final_objective > traces[best_trial].final_objective) best_trial = t;
        write_json(out_dir / "traces" / ("trace_" + std::to_string(t) + ".json"),
                   trace_to_json(trace, t, seed + static_cast<std::uint64_t>(t)));
    }
    write_json(out_dir / "best_partition.json",
               {{"trial", best_trial},
                {"objective", rounded(traces[best_trial].final_objective)},
                {"assignment", partition_json(traces[best_trial].final_partition.assignment)}});

    json manifest = flags.describe();
    manifest["command"] = "infer";
    manifest["graph"] = args.graph;
    manifest["init"] = args.init;
    manifest["blocks"] = args.blocks;
    manifest["epsilon"] = rounded(args.epsilon);
    manifest["sweeps"] = args.sweeps;
    manifest["trials"] = args.trials;
    manifest["record_every"] = args.record_every;
    manifest["seed"] = seed;
    manifest["threads"] = threads;
    manifest["outputs"] = {"summary.csv", "best_partition.json", "traces/", "manifest.json"};
    write_json(out_dir / "manifest.json", manifest);
    std::cout << "best trial " << best_trial << ": objective "
              << format_value(traces[best_trial].final_objective) << "; outputs in "
              << out_dir.string() << '\n';
}

// ---- sweep-f -----------------------------------------------------------------

struct SweepArgs {
    std::string graph;
    double f_start = 0.1;
    double f_end = 0.9;
    double f_step = 0.05;
    std::string form = "floor";
    int blocks = 2;
    double epsilon = 0.1;
    int sweeps = 1000;
    bool simple = false;
};

void run_sweep_f(const SweepArgs& args, const fs::path& out_dir, std::uint64_t seed) {
    Multigraph g = Multigraph::load_edge_list(args.graph);
    if (args.simple) g = g.simplified();

    std::vector<double> schedule;
    for (double f = args.f_start; f <= args.f_end + 1e-9; f += args.f_step)
        schedule.push_back(f);

    McmcConfig base;
    base.model = ModelKind::Rsbm;
    base.prior = args.form == "alpha" ? PriorSpec::alpha_form(schedule.front())
                                      : PriorSpec::floor_form(schedule.front());
    base.block_count = args.blocks;
    base.epsilon = args.epsilon;
    base.sweeps = args.sweeps;
    base.record_every = std::max(1, args.sweeps);
    base.record_partitions = false;
    base.seed = seed;

    const std::vector<AnnealStep> steps = anneal_f(g, schedule, base);

    auto csv = open_file(out_dir / "sweep.csv");
    csv << "f,coverage,modularity,objective\n";
    for (const auto& step : steps)
        csv << format_value(step.f) << ',' << format_value(step.coverage) << ','
            << format_value(step.modularity) << ',' << format_value(step.objective) << '\n';
    json partitions = json::array();
    for (const auto& step : steps)
        partitions.push_back(
            {{"f", rounded(step.f)}, {"assignment", partition_json(step.partition.assignment)}});
    write_json(out_dir / "partitions.json", partitions);
    write_json(out_dir / "manifest.json",
               {{"command", "sweep-f"},
                {"graph", args.graph},
                {"form", args.form},
                {"f_start", rounded(args.f_start)},
                {"f_end", rounded(args.f_end)},
                {"f_step", rounded(args.f_step)},
                {"blocks", args.blocks},
                {"epsilon", rounded(args.epsilon)},
                {"sweeps", args.sweeps},
                {"seed", seed},
                {"theta", "degree"},
                {"outputs", {"sweep.csv", "partitions.json", "manifest.json"}}});
    std::cout << "swept " << steps.size() << " prior settings; outputs in " << out_dir.string()
              << '\n';
}

// ---- landscape ---------------------------------------------------------------

Trace trace_from_json(const json& payload, int fallback_blocks) {
    Trace trace;
    const auto read_partition = [&](const char* key) {
        const std::vector<int> assignment = payload.at(key).get<std::vector<int>>();
        const int top = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end());
        return Partition(assignment, std::max(fallback_blocks, top + 1));
    };
    trace.initial_partition = read_partition("initial_partition");
    trace.final_partition = read_partition("final_partition");
    trace.best_partition = read_partition("best_partition");
    trace.final_objective = payload.at("final_objective").get<double>();
    trace.best_objective = payload.at("best_objective").get<double>();
    for (const auto& row : payload.at("records")) {
        TraceRecord rec;
        rec.step = row.at("sweep").get<long long>();
        rec.objective = row.at("objective").get<double>();
        rec.acceptance = row.at("acceptance").get<double>();
        if (row.contains("assignment"))
            rec.assignment = row.at("assignment").get<std::vector<int>>();
        trace.records.push_back(std::move(rec));
    }
    return trace;
}

void run_landscape(const std::string& graph_path, const std::vector<std::string>& trace_dirs,
                   const ModelFlags& flags, int blocks, int cap, const fs::path& out_dir,
                   std::uint64_t seed, bool simple) {
    Multigraph g = Multigraph::load_edge_list(graph_path);
    if (simple) g = g.simplified();

    std::vector<Trace> traces;
    for (const auto& dir : trace_dirs) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.path().extension() == ".json" &&
                entry.path().filename().string().rfind("trace_", 0) == 0)
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            std::ifstream in(file);
            json payload;
            in >> payload;
            traces.push_back(trace_from_json(payload, blocks));
        }
    }
    if (traces.empty())
        throw std::runtime_error("no trace_*.json files found under the given directories");

    const Objective objective(flags.kind(), g, flags.prior());
    const std::vector<LandscapePoint> points = build_landscape(g, objective, traces, cap, seed);

    auto csv = open_file(out_dir / "landscape.csv");
    csv << "x,y,objective,trial,sweep\n";
    for (const auto& p : points)
        csv << format_value(p.x) << ',' << format_value(p.y) << ',' << format_value(p.objective)
            << ',' << p.trial << ',' << p.step << '\n';
    json manifest = flags.describe();
    manifest["command"] = "landscape";
    manifest["graph"] = graph_path;
    manifest["trace_dirs"] = trace_dirs;
    manifest["points"] = points.size();
    manifest["cap"] = cap;
    manifest["seed"] = seed;
    manifest["outputs"] = {"landscape.csv", "manifest.json"};
    write_json(out_dir / "manifest.json", manifest);
    std::cout << "embedded " << points.size() << " partitions; outputs in " << out_dir.string()
              << '\n';
}

// ---- experiment --------------------------------------------------------------

void run_experiment(const std::string& id, const fs::path& out_dir, const std::string& data_dir,
                    std::uint64_t seed, int sweeps, int trials, int threads) {
    ExperimentResult result;
    if (id == "twin-stars-table") {
        result = run_twin_stars_table(out_dir.string());
    } else if (id == "convergence-dcsbm") {
        result = run_convergence(ModelKind::Dcsbm, out_dir.string(), seed, sweeps, trials, threads);
    } else if (id == "convergence-rsbm") {
        result = run_convergence(ModelKind::Rsbm, out_dir.string(), seed, sweeps, trials, threads);
    } else if (id.rfind("coverage-vs-density-", 0) == 0) {
        result = run_coverage_vs_density(id.substr(20), data_dir, out_dir.string(), seed, sweeps,
                                         trials, threads);
    } else if (id.rfind("f-sweep-", 0) == 0) {
        result = run_f_sweep(id.substr(8), data_dir, out_dir.string(), seed, sweeps, threads);
    } else {
        throw CLI::ValidationError(
            "experiment", "unknown id '" + id +
                              "' (ids: twin-stars-table, convergence-dcsbm, convergence-rsbm, "
                              "coverage-vs-density-<dataset>, f-sweep-<dataset>)");
    }

    bool failed = false;
    for (const auto& check : result.checks) {
        std::cout << (check.passed ? "  [ok]   " : "  [FAIL] ") << check.name << ": "
                  << check.detail << '\n';
        failed = failed || !check.passed;
    }
    std::cout << result.id << ": outputs in " << out_dir.string() << '\n';
    if (failed)
        throw CheckFailure("embedded checks failed for " + result.id);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-model toolkit: generation, scoring, MCMC inference, experiments"};
    app.require_subcommand(1);

    std::string seed_text = std::to_string(kDefaultSeed);
    int threads = 1;
    std::string out_dir_text = ".";
    app.add_option("--seed", seed_text, "RNG seed (integer), or 'random'")->capture_default_str();
    app.add_option("--threads", threads, "worker threads for independent trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out-dir", out_dir_text, "directory for all file output")
        ->envname("SBMKIT_OUT_DIR")
        ->capture_default_str();

    // generate
    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "sample a planted-partition multigraph");
    generate->add_option("--model", gen.model, "ssbm, dcsbm, or rsbm")
        ->check(CLI::IsMember({"ssbm", "dcsbm", "rsbm"}))
        ->capture_default_str();
    generate->add_option("--blocks", gen.blocks, "number of planted blocks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    generate->add_option("--nodes-per-block", gen.nodes_per_block, "nodes in each block")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    generate->add_option("--omega0", gen.omega0, "cross-block rate")->capture_default_str();
    generate->add_option("--gamma", gen.gamma, "within/cross rate ratio")->capture_default_str();
    generate->add_option("--exponent", gen.exponent, "power-law degree exponent (dcsbm, rsbm)")
        ->capture_default_str();
    generate->add_option("--k-min", gen.k_min, "smallest degree")->capture_default_str();
    generate->add_option("--alpha", gen.alpha, "rsbm prior f(k) = alpha + (1 - alpha)/k")
        ->capture_default_str();
    generate->add_option("--out", gen.out, "edge-list filename under --out-dir")
        ->capture_default_str();

    // score
    std::string score_graph, score_partition;
    bool score_simple = false;
    ModelFlags score_flags;
    auto* score = app.add_subcommand("score", "evaluate an objective on a fixed partition");
    score->add_option("--graph", score_graph, "edge-list file")->required();
    score->add_option("--partition", score_partition, "partition file (JSON array or node/block text)")
        ->required();
    score->add_flag("--simple", score_simple, "collapse duplicate edges after loading");
    score_flags.attach(score);

    // infer
    InferArgs infer;
    ModelFlags infer_flags;
    auto* infer_cmd = app.add_subcommand("infer", "MCMC partition search with restarts");
    infer_cmd->add_option("--graph", infer.graph, "edge-list file")->required();
    infer_cmd->add_option("--blocks", infer.blocks, "number of blocks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    infer_cmd->add_option("--epsilon", infer.epsilon, "proposal smoothing")->capture_default_str();
    infer_cmd->add_option("--sweeps", infer.sweeps, "sweeps per trial")->capture_default_str();
    infer_cmd->add_option("--trials", infer.trials, "independent restarts")->capture_default_str();
    infer_cmd->add_option("--init", infer.init, "'random' or a partition file")
        ->capture_default_str();
    infer_cmd->add_option("--record-every", infer.record_every, "sweeps between trace records")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    infer_cmd->add_flag("--no-partitions", infer.no_partitions,
                        "omit per-record assignments from traces (smaller files)");
    infer_cmd->add_flag("--simple", infer.simple, "collapse duplicate edges after loading");
    infer_flags.attach(infer_cmd, /*with_theta=*/false);

    // sweep-f
    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep-f", "anneal the rsbm prior parameter upward");
    sweep_cmd->add_option("--graph", sweep.graph, "edge-list file")->required();
    sweep_cmd->add_option("--f-start", sweep.f_start, "first prior setting")->capture_default_str();
    sweep_cmd->add_option("--f-end", sweep.f_end, "last prior setting")->capture_default_str();
    sweep_cmd->add_option("--f-step", sweep.f_step, "schedule increment")->capture_default_str();
    sweep_cmd->add_option("--form", sweep.form, "prior family: floor or alpha")
        ->check(CLI::IsMember({"floor", "alpha"}))
        ->capture_default_str();
    sweep_cmd->add_option("--blocks", sweep.blocks, "number of blocks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--epsilon", sweep.epsilon, "proposal smoothing")->capture_default_str();
    sweep_cmd->add_option("--sweeps", sweep.sweeps, "sweeps per prior setting")
        ->capture_default_str();
    sweep_cmd->add_flag("--simple", sweep.simple, "collapse duplicate edges after loading");

    // landscape
    std::string land_graph;
    std::vector<std::string> land_dirs;
    int land_blocks = 2, land_cap = 2000;
    bool land_simple = false;
    ModelFlags land_flags;
    auto* land = app.add_subcommand("landscape", "project recorded partitions to the plane");
    land->add_option("--graph", land_graph, "edge-list file")->required();
    land->add_option("--traces", land_dirs, "directories holding trace_*.json files")->required();
    land->add_option("--blocks", land_blocks, "number of blocks")->capture_default_str();
    land->add_option("--cap", land_cap, "most partitions to embed")->capture_default_str();
    land->add_flag("--simple", land_simple, "collapse duplicate edges after loading");
    land_flags.attach(land, /*with_theta=*/false);

    // experiment
    std::string experiment_id, data_dir = "data";
    int experiment_sweeps = 1000, experiment_trials = 20;
    auto* experiment = app.add_subcommand("experiment", "scripted result reproduction");
    auto* experiment_run = experiment->add_subcommand("run", "run one experiment by id");
    experiment_run->add_option("id", experiment_id, "experiment id")->required();
    experiment_run->add_option("--data-dir", data_dir, "directory with bundled datasets")
        ->capture_default_str();
    experiment_run->add_option("--sweeps", experiment_sweeps, "sweeps per trial")
        ->capture_default_str();
    experiment_run->add_option("--trials", experiment_trials, "trials per configuration")
        ->capture_default_str();
    experiment->require_subcommand(1);

    try {
        app.parse(argc, argv);

        const std::uint64_t seed = parse_seed(seed_text);
        const fs::path out_dir(out_dir_text);

        if (*generate) {
            run_generate(gen, out_dir, seed);
        } else if (*score) {
            run_score(score_graph, score_partition, score_flags, score_simple);
        } else if (*infer_cmd) {
            run_infer(infer, infer_flags, out_dir, seed, threads);
        } else if (*sweep_cmd) {
            run_sweep_f(sweep, out_dir, seed);
        } else if (*land) {
            run_landscape(land_graph, land_dirs, land_flags, land_blocks, land_cap, out_dir, seed,
                          land_simple);
        } else if (*experiment) {
            // default the output tree to a per-experiment directory
            const fs::path exp_out = app.count("--out-dir") || std::getenv("SBMKIT_OUT_DIR")
                                         ? out_dir
                                         : fs::path("results") / experiment_id;
            run_experiment(experiment_id, exp_out, data_dir, seed, experiment_sweeps,
                           experiment_trials, threads);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const CheckFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
