#include "hyperwalk/checks.hpp"

#include <cmath>
#include <sstream>

#include "hyperwalk/bounds.hpp"
#include "hyperwalk/families.hpp"
#include "hyperwalk/graph.hpp"
#include "hyperwalk/hitting.hpp"
#include "hyperwalk/operators.hpp"
#include "hyperwalk/resistance.hpp"
#include "hyperwalk/simulate.hpp"

namespace hyperwalk {
namespace {

double stationarity_gap(const Eigen::VectorXd& pi, const Eigen::MatrixXd& chain)
{
    return (pi.transpose() * chain - pi.transpose()).cwiseAbs().maxCoeff();
}

std::string label(const std::string& prefix, const std::string& name)
{
    return prefix.empty() ? name : prefix + "/" + name;
}

void add_instance_checks(CheckSuite& suite, const AnyHypergraph& any, const std::string& prefix)
{
    if (const auto* h = std::get_if<Hypergraph>(&any)) {
        const WalkOperators ops = build_operators(*h);
        suite.add(label(prefix, "vertex-chain-stochastic"), stochastic_deviation(ops.vertex_chain), 1e-12);
        suite.add(label(prefix, "edge-chain-stochastic"), stochastic_deviation(ops.edge_chain), 1e-12);
        suite.add(label(prefix, "vertex-stationary"), stationarity_gap(ops.vertex_stationary, ops.vertex_chain), 1e-12);
        suite.add(label(prefix, "edge-stationary"), stationarity_gap(ops.edge_stationary, ops.edge_chain), 1e-12);
        suite.add(label(prefix, "product-vertex-chain"),
                  (ops.vertex_edge * ops.edge_vertex - ops.vertex_chain).cwiseAbs().maxCoeff(), 1e-12);
        suite.add(label(prefix, "product-edge-chain"),
                  (ops.edge_vertex * ops.vertex_edge - ops.edge_chain).cwiseAbs().maxCoeff(), 1e-12);
        const auto coupling =
            coupling_check(ops.vertex_edge, ops.edge_vertex, ops.vertex_chain, ops.edge_chain, 10, 1e-12);
        suite.add(label(prefix, "coupling"), coupling.max_deviation, coupling.tolerance);
        const auto spectrum = spectrum_check(ops.vertex_chain, ops.edge_chain, 1e-8);
        suite.add(label(prefix, "spectrum"), spectrum.max_pair_distance, spectrum.tolerance);
        const auto lift = lift_walk_check(*h);
        suite.add(label(prefix, "bipartite-lift"), lift.max_deviation, lift.tolerance);
        return;
    }
    const auto& d = std::get<DirectedHypergraph>(any);
    const DirectedWalkOperators ops = build_directed_operators(d);
    suite.add_flag(label(prefix, "irreducible"), ops.irreducible);
    suite.add(label(prefix, "vertex-chain-stochastic"), stochastic_deviation(ops.vertex_chain), 1e-12);
    suite.add(label(prefix, "arc-chain-stochastic"), stochastic_deviation(ops.arc_chain), 1e-12);
    const auto coupling = coupling_check(ops.vertex_arc, ops.arc_vertex, ops.vertex_chain, ops.arc_chain, 10, 1e-12);
    suite.add(label(prefix, "coupling"), coupling.max_deviation, coupling.tolerance);
    const auto spectrum = spectrum_check(ops.vertex_chain, ops.arc_chain, 1e-8);
    suite.add(label(prefix, "spectrum"), spectrum.max_pair_distance, spectrum.tolerance);
}

std::string name_of(const FamilySpec& spec)
{
    std::ostringstream out;
    out << spec.name;
    const Json params = spec.to_json();
    for (const auto& [key, value] : params.items()) {
        if (key != "family") out << ' ' << key << '=' << value.dump();
    }
    return out.str();
}

} // namespace

bool CheckSuite::passed() const
{
    for (const auto& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

void CheckSuite::add(std::string name, double value, double tolerance, std::string detail)
{
    results.push_back({std::move(name), std::isfinite(value) && value <= tolerance, value, tolerance, std::move(detail)});
}

void CheckSuite::add_flag(std::string name, bool ok, std::string detail)
{
    results.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0, std::move(detail)});
}

Json to_json(const CheckSuite& suite)
{
    Json j;
    j["passed"] = suite.passed();
    Json rows = Json::array();
    for (const auto& r : suite.results) {
        Json x;
        x["name"] = r.name;
        x["passed"] = r.passed;
        x["value"] = number_or_inf(r.value);
        x["tolerance"] = r.tolerance;
        if (!r.detail.empty()) x["detail"] = r.detail;
        rows.push_back(std::move(x));
    }
    j["checks"] = std::move(rows);
    return j;
}

CheckSuite check_instance(const AnyHypergraph& h)
{
    CheckSuite suite;
    add_instance_checks(suite, h, "");
    return suite;
}

CheckSuite run_invariant_suite(std::uint64_t seed, std::size_t trials)
{
    CheckSuite suite;

    // Path on three vertices, exact values.
    {
        const Hypergraph p3 = hyperline(3, 2);
        const ExactAnalyzer exact(p3);
        const Vertex to_c[] = {2};
        const RadioHitting radio = exact.radio_hitting(0, to_c);
        suite.add("p3/hitting", std::abs(exact.hitting(0, to_c) - 8.0), 1e-9);
        suite.add("p3/radio-hitting", std::abs(radio.value - 5.0), 1e-9);
        suite.add("p3/radio-hitting-raw", std::abs(radio.raw - 4.0), 1e-9);
    }

    for (const FamilySpec& spec : default_bound_grid()) add_instance_checks(suite, spec.generate(), name_of(spec));

    for (std::uint64_t i = 0; i < 10; ++i) {
        const Graph g = random_connected_graph(8 + 2 * i, 0.2, seed + i);
        const std::string prefix = "random-graph-" + std::to_string(i);
        const Eigen::MatrixXd simple = simple_walk_matrix(g);
        const Eigen::Index n = simple.rows();
        const Eigen::MatrixXd lazy = 0.5 * (Eigen::MatrixXd::Identity(n, n) + simple);
        suite.add(prefix + "/lazy-walk",
                  (build_operators(to_hypergraph(g)).vertex_chain - lazy).cwiseAbs().maxCoeff(), 1e-12);
        suite.add(prefix + "/radio-walk",
                  (build_directed_operators(radio_from_graph(g).directed()).vertex_chain - simple).cwiseAbs().maxCoeff(),
                  1e-12);
        suite.add(prefix + "/commute", commute_check(g, 0, g.num_vertices() - 1).residual, 1e-8);
        suite.add(prefix + "/foster", std::abs(foster_sum(g) - static_cast<double>(g.num_vertices() - 1)), 1e-8);
    }

    for (std::size_t k = 1; k <= 10; ++k) {
        const Line1DMoments m = line1d_step_moments(k);
        suite.add_flag("line1d-variance-k" + std::to_string(k), m.radio_line_matches);
    }

    for (std::size_t side : {4, 5}) {
        const TransitiveReport t = transitive_identities(mesh2d(side, 1), 0, side + 1);
        suite.add("mesh2d-" + std::to_string(side) + "/transitive", t.checked ? t.max_residual() : INFINITY, 1e-7,
                  t.warning);
    }

    SimConfig sim;
    sim.trials = trials;
    sim.seed = seed;
    sim.policy = StartPolicy::fixed;
    const SimReport single = estimate_radio_cover(WalkModel(single_edge(16)), sim);
    suite.add_flag("single-edge/radio-cover-is-one",
                   single.estimate.mean == 1.0 && single.estimate.variance == 0.0 && single.estimate.capped == 0);
    const SimReport again = estimate_radio_cover(WalkModel(single_edge(16)), sim);
    const SimReport cover_a = estimate_cover(WalkModel(hyperline(10, 3)), sim);
    const SimReport cover_b = estimate_cover(WalkModel(hyperline(10, 3)), sim);
    suite.add_flag("simulation/deterministic",
                   to_json(single).dump() == to_json(again).dump() && to_json(cover_a).dump() == to_json(cover_b).dump());
    return suite;
}

} // namespace hyperwalk
