#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperwalk/bounds.hpp"
#include "hyperwalk/error.hpp"
#include "hyperwalk/families.hpp"
#include "hyperwalk/hitting.hpp"
#include "hyperwalk/io.hpp"
#include "hyperwalk/operators.hpp"
#include "hyperwalk/resistance.hpp"
#include "hyperwalk/simulate.hpp"

namespace py = pybind11;
using namespace hyperwalk;

namespace {

py::object to_python(const Json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

WalkModel model_of(const py::object& h)
{
    if (py::isinstance<Hypergraph>(h)) return WalkModel(h.cast<const Hypergraph&>());
    if (py::isinstance<RadioHypergraph>(h)) return WalkModel(h.cast<const RadioHypergraph&>());
    return WalkModel(h.cast<const DirectedHypergraph&>());
}

ExactAnalyzer analyzer_of(const py::object& h)
{
    if (py::isinstance<Hypergraph>(h)) return ExactAnalyzer(h.cast<const Hypergraph&>());
    if (py::isinstance<RadioHypergraph>(h)) return ExactAnalyzer(h.cast<const RadioHypergraph&>());
    return ExactAnalyzer(h.cast<const DirectedHypergraph&>());
}

SimConfig make_config(std::size_t trials, std::uint64_t seed, const std::string& start, std::uint64_t cap,
                      unsigned threads)
{
    SimConfig c;
    c.trials = trials;
    c.seed = seed;
    c.cap = cap;
    c.threads = threads;
    if (start == "all" || start == "stationary") {
        c.policy = parse_start_policy(start);
    } else {
        c.policy = StartPolicy::fixed;
        c.start = std::stoul(start);
    }
    return c;
}

py::dict radio_dict(const RadioHitting& r)
{
    py::dict d;
    d["value"] = r.value;
    d["raw"] = r.raw;
    d["targets"] = r.targets;
    d["target_edges"] = r.target_edges;
    return d;
}

py::tuple extremum(const Extremum& e)
{
    return py::make_tuple(e.value, e.source, e.target);
}

} // namespace

PYBIND11_MODULE(hyperwalk, m)
{
    m.doc() = "Random walks, hitting times and radio broadcast on hyper-graphs";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

    py::class_<Hypergraph>(m, "Hypergraph")
        .def(py::init<std::size_t, std::vector<VertexSet>, std::vector<std::string>>(), py::arg("n"),
             py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
        .def_property_readonly("num_vertices", &Hypergraph::num_vertices)
        .def_property_readonly("num_edges", &Hypergraph::num_edges)
        .def_property_readonly("rank", &Hypergraph::rank)
        .def_property_readonly("edges", &Hypergraph::edges)
        .def("incidence_matrix", [](const Hypergraph& h) { return incidence_matrix(h); })
        .def("components", [](const Hypergraph& h) { return components(h); })
        .def("is_connected", [](const Hypergraph& h) { return is_connected(h); })
        .def("to_json", [](const Hypergraph& h) { return to_json(h).dump(); });

    py::class_<DirectedHypergraph>(m, "DirectedHypergraph")
        .def(py::init([](std::size_t n, const std::vector<std::pair<VertexSet, VertexSet>>& arcs) {
                 std::vector<Arc> out;
                 for (const auto& [org, dst] : arcs) out.push_back({org, dst});
                 return DirectedHypergraph(n, std::move(out));
             }),
             py::arg("n"), py::arg("arcs"))
        .def_property_readonly("num_vertices", &DirectedHypergraph::num_vertices)
        .def_property_readonly("num_arcs", &DirectedHypergraph::num_arcs)
        .def_property_readonly("arcs",
                               [](const DirectedHypergraph& d) {
                                   std::vector<std::pair<VertexSet, VertexSet>> out;
                                   for (const auto& a : d.arcs()) out.emplace_back(a.org, a.dst);
                                   return out;
                               })
        .def("satisfies_radio_constraint", &DirectedHypergraph::satisfies_radio_constraint)
        .def("to_json", [](const DirectedHypergraph& d) { return to_json(d).dump(); });

    py::class_<RadioHypergraph>(m, "RadioHypergraph")
        .def(py::init<DirectedHypergraph>(), py::arg("directed"))
        .def_property_readonly("num_vertices", &RadioHypergraph::num_vertices)
        .def_property_readonly("num_arcs", &RadioHypergraph::num_arcs)
        .def("directed", &RadioHypergraph::directed)
        .def("to_json", [](const RadioHypergraph& r) { return to_json(r).dump(); });

    py::class_<Graph>(m, "Graph")
        .def(py::init<std::size_t, std::vector<Graph::Edge>>(), py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def("simple_walk_matrix", [](const Graph& g) { return simple_walk_matrix(g); })
        .def("to_hypergraph", [](const Graph& g) { return to_hypergraph(g); })
        .def("radio", [](const Graph& g) { return radio_from_graph(g); });

    m.def("parse_hypergraph", [](const std::string& text) -> py::object {
        AnyHypergraph h = parse_hypergraph(text);
        if (auto* u = std::get_if<Hypergraph>(&h)) return py::cast(std::move(*u));
        return py::cast(std::get<DirectedHypergraph>(std::move(h)));
    });

    m.def("hyperline", &hyperline, py::arg("n"), py::arg("k"));
    m.def("radio_line", &radio_line, py::arg("n"), py::arg("k"), py::arg("ring") = true);
    m.def("mesh2d", &mesh2d, py::arg("side"), py::arg("k"));
    m.def("single_edge", &single_edge, py::arg("n"));
    m.def("clique_line", &clique_line, py::arg("n_prime"), py::arg("c"));
    m.def("random_uniform", &random_uniform, py::arg("n"), py::arg("m"), py::arg("k"), py::arg("seed") = 0);
    m.def("random_connected_graph", &random_connected_graph, py::arg("n"), py::arg("p"), py::arg("seed") = 0);
    m.def(
        "unit_disk",
        [](const std::vector<std::pair<double, double>>& xy, double radius) {
            std::vector<Point> points;
            for (auto [x, y] : xy) points.push_back({x, y});
            return unit_disk(points, radius);
        },
        py::arg("points"), py::arg("radius"));

    m.def(
        "operators",
        [](const Hypergraph& h) {
            const WalkOperators ops = build_operators(h);
            py::dict d;
            d["A"] = ops.vertex_edge;
            d["B"] = ops.edge_vertex;
            d["P"] = ops.vertex_chain;
            d["Q"] = ops.edge_chain;
            d["pi"] = ops.vertex_stationary;
            d["zeta"] = ops.edge_stationary;
            return d;
        },
        py::arg("h"));
    m.def(
        "coupling_check",
        [](const Hypergraph& h, int steps, double tol) { return coupling_check(h, steps, tol).max_deviation; },
        py::arg("h"), py::arg("steps") = 10, py::arg("tol") = 1e-12);
    m.def(
        "hitting_times",
        [](const Eigen::MatrixXd& transition, const std::vector<std::size_t>& targets) {
            return hitting_times(transition, targets).values;
        },
        py::arg("transition"), py::arg("targets"));

    m.def(
        "hitting",
        [](const py::object& h, Vertex from, const VertexSet& targets) {
            return analyzer_of(h).hitting(from, targets);
        },
        py::arg("h"), py::arg("source"), py::arg("targets"));
    m.def(
        "radio_hitting",
        [](const py::object& h, Vertex from, const VertexSet& targets) {
            return radio_dict(analyzer_of(h).radio_hitting(from, targets));
        },
        py::arg("h"), py::arg("source"), py::arg("targets"));
    m.def(
        "hitting_matrix", [](const py::object& h) { return analyzer_of(h).hitting_matrix(); }, py::arg("h"));
    m.def(
        "radio_hitting_matrix",
        [](const py::object& h) {
            Eigen::MatrixXd raw;
            Eigen::MatrixXd value = analyzer_of(h).radio_hitting_matrix(&raw);
            return py::make_tuple(value, raw);
        },
        py::arg("h"));
    m.def(
        "max_hitting", [](const py::object& h) { return extremum(analyzer_of(h).max_hitting()); }, py::arg("h"));
    m.def(
        "max_radio_hitting", [](const py::object& h) { return extremum(analyzer_of(h).max_radio_hitting()); },
        py::arg("h"));

    m.def(
        "estimate_cover",
        [](const py::object& h, std::size_t trials, std::uint64_t seed, const std::string& start, std::uint64_t cap,
           unsigned threads) {
            const WalkModel model = model_of(h);
            SimReport r;
            {
                py::gil_scoped_release release;
                r = estimate_cover(model, make_config(trials, seed, start, cap, threads));
            }
            return to_python(to_json(r));
        },
        py::arg("h"), py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("start") = "all", py::arg("cap") = 0,
        py::arg("threads") = 0);
    m.def(
        "estimate_radio_cover",
        [](const py::object& h, std::size_t trials, std::uint64_t seed, const std::string& start, std::uint64_t cap,
           unsigned threads) {
            const WalkModel model = model_of(h);
            SimReport r;
            {
                py::gil_scoped_release release;
                r = estimate_radio_cover(model, make_config(trials, seed, start, cap, threads));
            }
            return to_python(to_json(r));
        },
        py::arg("h"), py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("start") = "all", py::arg("cap") = 0,
        py::arg("threads") = 0);

    m.def("effective_resistance", &effective_resistance, py::arg("g"), py::arg("u"), py::arg("v"));
    m.def("foster_sum", &foster_sum, py::arg("g"));

    m.def("harmonic", &harmonic, py::arg("n"));
    m.def("matthews_bound", &matthews_bound, py::arg("h_max"), py::arg("n"));
    m.def("radio_matthews_bound", &radio_matthews_bound, py::arg("radio_h_max"), py::arg("n"));
    m.def("mnr_bound", &mnr_bound, py::arg("n"), py::arg("m"), py::arg("r"));
    m.def("speedup_bound", &speedup_bound, py::arg("n"));
    m.def("line1d_bound", &line1d_bound, py::arg("n"), py::arg("k"));
    m.def(
        "line1d_step_moments", [](std::size_t k) { return to_python(to_json(line1d_step_moments(k))); },
        py::arg("k"));
    m.def(
        "check_bounds",
        [](const py::object& h, std::size_t trials, std::uint64_t seed) {
            BoundConfig config;
            config.sim.trials = trials;
            config.sim.seed = seed;
            AnyHypergraph any = py::isinstance<Hypergraph>(h)
                                    ? AnyHypergraph(h.cast<Hypergraph>())
                                    : AnyHypergraph(py::isinstance<RadioHypergraph>(h)
                                                        ? h.cast<const RadioHypergraph&>().directed()
                                                        : h.cast<DirectedHypergraph>());
            Json out = Json::array();
            for (const auto& r : check_bounds(any, config)) out.push_back(to_json(r));
            return to_python(out);
        },
        py::arg("h"), py::arg("trials") = 200, py::arg("seed") = 0);
}
