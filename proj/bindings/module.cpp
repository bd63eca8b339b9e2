#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sbmkit/experiments.hpp"
#include "sbmkit/generators.hpp"
#include "sbmkit/mcmc.hpp"
#include "sbmkit/metrics.hpp"
#include "sbmkit/models.hpp"
#include "sbmkit/multigraph.hpp"

namespace py = pybind11;
using namespace sbmkit;

PYBIND11_MODULE(sbmkit, m) {
    m.doc() = "block-model toolkit: multigraphs, likelihood objectives, MCMC inference";

    py::class_<Multigraph>(m, "Multigraph")
        .def(py::init<>())
        .def(py::init<int, std::vector<std::pair<int, int>>, std::vector<std::string>>(),
             py::arg("node_count"), py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
        .def_static("parse_edge_list",
                    py::overload_cast<const std::string&>(&Multigraph::parse_edge_list))
        .def_static("load_edge_list", &Multigraph::load_edge_list)
        .def_static("twin_stars", &Multigraph::twin_stars)
        .def("save_edge_list",
             py::overload_cast<const std::string&>(&Multigraph::save_edge_list, py::const_))
        .def("simplified", &Multigraph::simplified)
        .def("sparsified", &Multigraph::sparsified, py::arg("remove_count"), py::arg("seed"))
        .def_property_readonly("node_count", &Multigraph::node_count)
        .def_property_readonly("edge_count", &Multigraph::edge_count)
        .def_property_readonly("mean_degree", &Multigraph::mean_degree)
        .def("degree", &Multigraph::degree)
        .def("adjacency_count", &Multigraph::adjacency_count)
        .def("neighbors", &Multigraph::neighbors)
        .def("edges", &Multigraph::edges)
        .def("label", &Multigraph::label)
        .def("__repr__", [](const Multigraph& g) {
            return "<Multigraph " + std::to_string(g.node_count()) + " nodes, " +
                   std::to_string(g.edge_count()) + " edges>";
        });

    py::class_<Partition>(m, "Partition")
        .def(py::init<std::vector<int>, int>(), py::arg("assignment"), py::arg("block_count"))
        .def_readwrite("assignment", &Partition::assignment)
        .def_readwrite("block_count", &Partition::block_count)
        .def("__len__", &Partition::size);
    m.def("load_partition", &load_partition, py::arg("path"), py::arg("block_count") = 0);

    py::class_<NodeFactors>(m, "NodeFactors")
        .def(py::init<>())
        .def_readwrite("in_", &NodeFactors::in)
        .def_readwrite("out", &NodeFactors::out);

    py::class_<BlockStats>(m, "BlockStats")
        .def(py::init<const Multigraph&, Partition>(), py::keep_alive<1, 2>())
        .def_property_readonly("block_count", &BlockStats::block_count)
        .def("edges_between", &BlockStats::edges_between)
        .def("block_degree", &BlockStats::block_degree)
        .def("block_size", &BlockStats::block_size)
        .def("block_of", &BlockStats::block_of)
        .def("degree_within", &BlockStats::degree_within)
        .def("partition", &BlockStats::partition)
        .def("apply_move", &BlockStats::apply_move);

    py::class_<PriorSpec>(m, "PriorSpec")
        .def_static("alpha_form", &PriorSpec::alpha_form)
        .def_static("floor_form", &PriorSpec::floor_form)
        .def_static("explicit_values", &PriorSpec::explicit_values);
    m.def("prior_ratio", &prior_ratio);
    m.def("node_factors",
          [](const PriorSpec& spec, const Multigraph& g) { return node_factors(spec, g); });

    m.def("ssbm_objective", &ssbm_objective);
    m.def("dcsbm_objective", &dcsbm_objective);
    m.def(
        "rsbm_objective",
        [](const BlockStats& stats, const PriorSpec& spec) { return rsbm_objective(stats, spec); },
        py::arg("stats"), py::arg("prior"));
    m.def("general_objective", &general_objective);
    m.def("information_form_objective", &information_form_objective);
    m.def("fit_theta", &fit_theta, py::arg("stats"), py::arg("prior"), py::arg("tol") = 1e-10,
          py::arg("max_iterations") = 10000);

    py::enum_<ModelKind>(m, "ModelKind")
        .value("ssbm", ModelKind::Ssbm)
        .value("dcsbm", ModelKind::Dcsbm)
        .value("rsbm", ModelKind::Rsbm);

    py::class_<Objective>(m, "Objective")
        .def(py::init<ModelKind, const Multigraph&, PriorSpec>(), py::arg("kind"), py::arg("graph"),
             py::arg("prior") = PriorSpec{}, py::keep_alive<1, 3>())
        .def("value", &Objective::value)
        .def("delta", &Objective::delta);

    py::class_<OmegaMatrix>(m, "OmegaMatrix")
        .def(py::init<int>())
        .def_readonly("block_count", &OmegaMatrix::block_count)
        .def("at", py::overload_cast<int, int>(&OmegaMatrix::at, py::const_))
        .def("set", [](OmegaMatrix& w, int r, int s, double value) { w.at(r, s) = value; });

    m.def("planted_omega", &planted_omega, py::arg("block_count"), py::arg("omega0"),
          py::arg("gamma"));
    m.def(
        "sample_powerlaw_degrees",
        [](int n, double exponent, int k_min, std::uint64_t seed) {
            Rng rng(seed);
            return sample_powerlaw_degrees(n, exponent, k_min, rng);
        },
        py::arg("n"), py::arg("exponent"), py::arg("k_min"), py::arg("seed"));
    m.def(
        "sample_dcsbm",
        [](const std::vector<int>& assignment, const OmegaMatrix& omega,
           const std::vector<double>& weights, std::uint64_t seed) {
            Rng rng(seed);
            return sample_dcsbm(assignment, omega, weights, rng);
        },
        py::arg("assignment"), py::arg("omega"), py::arg("weights"), py::arg("seed"));

    py::class_<McmcConfig>(m, "McmcConfig")
        .def(py::init<>())
        .def_readwrite("model", &McmcConfig::model)
        .def_readwrite("prior", &McmcConfig::prior)
        .def_readwrite("block_count", &McmcConfig::block_count)
        .def_readwrite("epsilon", &McmcConfig::epsilon)
        .def_readwrite("sweeps", &McmcConfig::sweeps)
        .def_readwrite("record_every", &McmcConfig::record_every)
        .def_readwrite("record_partitions", &McmcConfig::record_partitions)
        .def_readwrite("seed", &McmcConfig::seed);
    m.attr("DEFAULT_SEED") = kDefaultSeed;

    py::class_<TraceRecord>(m, "TraceRecord")
        .def_readonly("step", &TraceRecord::step)
        .def_readonly("objective", &TraceRecord::objective)
        .def_readonly("acceptance", &TraceRecord::acceptance)
        .def_readonly("assignment", &TraceRecord::assignment);

    py::class_<Trace>(m, "Trace")
        .def_readonly("records", &Trace::records)
        .def_readonly("initial_partition", &Trace::initial_partition)
        .def_readonly("final_partition", &Trace::final_partition)
        .def_readonly("final_objective", &Trace::final_objective)
        .def_readonly("best_partition", &Trace::best_partition)
        .def_readonly("best_objective", &Trace::best_objective)
        .def_readonly("mean_acceptance", &Trace::mean_acceptance);

    m.def(
        "run_trial",
        [](const Multigraph& g, const McmcConfig& config) { return run_trial(g, config); },
        py::arg("graph"), py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_trials",
        [](const Multigraph& g, const McmcConfig& config, int trials, int threads) {
            return run_trials(g, config, trials, threads);
        },
        py::arg("graph"), py::arg("config"), py::arg("trials"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
    m.def("anneal_f", &anneal_f, py::arg("graph"), py::arg("schedule"), py::arg("base"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<AnnealStep>(m, "AnnealStep")
        .def_readonly("f", &AnnealStep::f)
        .def_readonly("objective", &AnnealStep::objective)
        .def_readonly("partition", &AnnealStep::partition)
        .def_readonly("coverage", &AnnealStep::coverage)
        .def_readonly("modularity", &AnnealStep::modularity);

    m.def("coverage", &coverage);
    m.def("modularity", &modularity);
    m.def("partition_mismatch", &partition_mismatch);
    m.def("partition_distance", &partition_distance);
    m.def("mds_project", [](const std::vector<std::vector<double>>& distance) {
        const MdsResult result = mds_project(distance);
        return py::make_tuple(result.coords, result.eigenvalue1, result.eigenvalue2);
    });

    py::class_<TwinStarsTable>(m, "TwinStarsTable")
        .def_readonly("row_names", &TwinStarsTable::row_names)
        .def_readonly("column_names", &TwinStarsTable::column_names)
        .def_property_readonly("values",
                               [](const TwinStarsTable& t) {
                                   std::vector<std::vector<double>> rows;
                                   for (int r = 0; r < 5; ++r)
                                       rows.emplace_back(std::begin(t.values[r]),
                                                         std::end(t.values[r]));
                                   return rows;
                               })
        .def_property_readonly("argmax", [](const TwinStarsTable& t) {
            return std::vector<int>(std::begin(t.argmax), std::end(t.argmax));
        });
    m.def("twin_stars_table", &twin_stars_table);
}
