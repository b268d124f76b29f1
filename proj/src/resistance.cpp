#include "hyperwalk/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "hyperwalk/error.hpp"
#include "hyperwalk/hitting.hpp"
#include "hyperwalk/operators.hpp"

namespace hyperwalk {
namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

Eigen::MatrixXd laplacian(const Graph& g)
{
    const Index n = idx(g.num_vertices());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (auto [a, b] : g.edges()) {
        const Index i = idx(a);
        const Index j = idx(b);
        l(i, i) += 1;
        l(j, j) += 1;
        l(i, j) -= 1;
        l(j, i) -= 1;
    }
    return l;
}

void require_connected_graph(const Graph& g)
{
    require_dense_size(g.num_vertices(), 0);
    if (!g.is_connected()) throw InfeasibleError("graph is disconnected");
}

// Laplacian without the row and column of `ground`.
Eigen::MatrixXd grounded(const Eigen::MatrixXd& l, Index ground)
{
    const Index n = l.rows();
    Eigen::MatrixXd out(n - 1, n - 1);
    for (Index i = 0, r = 0; i < n; ++i) {
        if (i == ground) continue;
        for (Index j = 0, c = 0; j < n; ++j) {
            if (j == ground) continue;
            out(r, c++) = l(i, j);
        }
        ++r;
    }
    return out;
}

} // namespace

double effective_resistance(const Graph& g, Vertex u, Vertex v)
{
    require_connected_graph(g);
    if (u >= g.num_vertices() || v >= g.num_vertices()) throw ValidationError("vertex out of range");
    if (u == v) return 0.0;
    if (u > v) std::swap(u, v); // same arithmetic for (u, v) and (v, u)
    // Ground v, inject a unit current at u; R_uv is the potential at u.
    const Eigen::MatrixXd reduced = grounded(laplacian(g), idx(v));
    const Index row = idx(u) - (u > v ? 1 : 0);
    Eigen::VectorXd current = Eigen::VectorXd::Zero(reduced.rows());
    current(row) = 1.0;
    const Eigen::VectorXd potential = reduced.partialPivLu().solve(current);
    return potential(row);
}

ResistanceTable::ResistanceTable(const Graph& g)
{
    require_connected_graph(g);
    const Index n = idx(g.num_vertices());
    Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(n, n);
    if (n > 1) {
        const Eigen::MatrixXd reduced = grounded(laplacian(g), 0);
        inv.bottomRightCorner(n - 1, n - 1) = reduced.partialPivLu().inverse();
    }
    table_ = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            table_(i, j) = inv(i, i) + inv(j, j) - inv(i, j) - inv(j, i);
            table_(j, i) = table_(i, j);
        }
    }
}

CommuteReport commute_check(const Graph& g, Vertex u, Vertex v, double tol)
{
    require_connected_graph(g);
    const Eigen::MatrixXd walk = simple_walk_matrix(g);
    const Vertex to_v[] = {v};
    const Vertex to_u[] = {u};
    CommuteReport report;
    report.u = u;
    report.v = v;
    report.commute = hitting_times(walk, to_v).values[u] + hitting_times(walk, to_u).values[v];
    report.resistance = effective_resistance(g, u, v);
    report.edges = g.num_edges();
    report.residual = std::abs(report.commute - 2.0 * static_cast<double>(report.edges) * report.resistance);
    report.passed = report.residual <= tol;
    return report;
}

double foster_sum(const Graph& g)
{
    const ResistanceTable r(g);
    double total = 0;
    for (auto [a, b] : g.edges()) total += r(a, b);
    return total;
}

double TransitiveReport::max_residual() const
{
    return std::max({decomposition_residual, radio_hitting_residual, radio_resistance_residual});
}

TransitiveReport transitive_identities(const RadioHypergraph& r, Vertex u, Vertex v)
{
    TransitiveReport report;
    report.u = u;
    report.v = v;
    if (u >= r.num_vertices() || v >= r.num_vertices()) throw ValidationError("vertex out of range");

    std::optional<Graph> g;
    try {
        g.emplace(walk_graph(r));
    } catch (const ValidationError& e) {
        report.warning = std::string("not a transitive radio hyper-graph: ") + e.what();
        return report;
    }
    report.edges = g->num_edges();
    const std::size_t n = g->num_vertices();
    for (Vertex x = 1; x < n; ++x) {
        if (g->degree(x) != g->degree(0)) {
            report.warning = "walk graph is not regular; identities skipped";
            return report;
        }
    }
    const ResistanceTable resistance(*g);
    std::vector<double> reference(resistance.matrix().row(0).data(), resistance.matrix().row(0).data() + n);
    std::sort(reference.begin(), reference.end());
    for (Vertex x = 1; x < n; ++x) {
        const Eigen::VectorXd row = resistance.matrix().row(idx(x)).transpose();
        std::vector<double> sorted(row.data(), row.data() + n);
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(sorted[i] - reference[i]) > 1e-9) {
                report.warning = "resistance profile differs between vertices; input is not vertex-transitive";
                return report;
            }
        }
    }

    const VertexSet& nbrs = g->neighbors(v);
    report.w = std::binary_search(nbrs.begin(), nbrs.end(), u) ? u : nbrs.front();
    report.neighbors_equivalent = std::all_of(nbrs.begin(), nbrs.end(), [&](Vertex x) {
        return std::abs(resistance(x, v) - resistance(nbrs.front(), v)) <= 1e-9;
    });

    const ExactAnalyzer exact(r);
    const Vertex to_v[] = {v};
    const auto to_vertex = exact.hitting(to_v);
    const auto to_neighbors = exact.hitting(nbrs);
    const Eigen::MatrixXd entry = entry_distribution(exact.vertex_chain(), nbrs);

    report.hitting_uv = to_vertex.values[u];
    report.hitting_u_neighbors = u == v ? 0.0 : to_neighbors.values[u];
    report.hitting_wv = to_vertex.values[report.w];
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
        const double p = u == v ? 0.0 : entry(idx(u), idx(j));
        report.entry_hitting_v += p * to_vertex.values[nbrs[j]];
        report.entry_resistance_v += p * resistance(nbrs[j], v);
    }
    const RadioHitting radio = exact.radio_hitting(u, to_v);
    report.radio = radio.value;
    report.radio_raw = radio.raw;
    report.resistance_uv = resistance(u, v);
    report.resistance_wv = resistance(report.w, v);

    const double m = static_cast<double>(report.edges);
    report.decomposition_residual =
        u == v ? 0.0 : std::abs(report.hitting_uv - report.hitting_u_neighbors - report.entry_hitting_v);
    report.radio_hitting_residual = std::abs(report.radio_raw - (report.hitting_uv - report.entry_hitting_v));
    report.radio_resistance_residual =
        std::abs(report.radio_raw - m * (report.resistance_uv - report.entry_resistance_v));
    report.checked = true;
    return report;
}

} // namespace hyperwalk
