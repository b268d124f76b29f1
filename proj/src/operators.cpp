#include "hyperwalk/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hyperwalk/error.hpp"

namespace hyperwalk {
namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void require_walkable(const Hypergraph& h)
{
    if (h.num_edges() == 0) throw InfeasibleError("hyper-graph has no edges");
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        if (h.incident_edges(v).empty()) throw InfeasibleError("vertex " + std::to_string(v) + " has degree 0");
    }
    if (!is_connected(h)) throw InfeasibleError("hyper-graph is disconnected");
}

bool reaches_all(const Eigen::MatrixXd& m, bool transpose)
{
    const Index n = m.rows();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Index> stack{0};
    seen[0] = true;
    Index count = 1;
    while (!stack.empty()) {
        Index x = stack.back();
        stack.pop_back();
        for (Index y = 0; y < n; ++y) {
            const double w = transpose ? m(y, x) : m(x, y);
            if (w > 0 && !seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                ++count;
                stack.push_back(y);
            }
        }
    }
    return count == n;
}

} // namespace

void require_dense_size(std::size_t vertices, std::size_t edges)
{
    if (vertices + edges > kMaxDenseStates) {
        throw ValidationError("instance too large for dense operators: n + m = " + std::to_string(vertices + edges) +
                              " exceeds " + std::to_string(kMaxDenseStates));
    }
}

WalkOperators build_operators(const Hypergraph& h)
{
    require_walkable(h);
    const std::size_t n = h.num_vertices();
    const std::size_t m = h.num_edges();
    require_dense_size(n, m);
    const Degrees deg = degrees(h);

    WalkOperators ops;
    const Eigen::MatrixXd w = incidence_matrix(h);
    Eigen::VectorXd inv_dv(idx(n));
    Eigen::VectorXd inv_de(idx(m));
    for (std::size_t v = 0; v < n; ++v) inv_dv(idx(v)) = 1.0 / static_cast<double>(deg.vertex[v]);
    for (std::size_t e = 0; e < m; ++e) inv_de(idx(e)) = 1.0 / static_cast<double>(deg.edge[e]);
    ops.vertex_edge = inv_dv.asDiagonal() * w;
    ops.edge_vertex = inv_de.asDiagonal() * w.transpose();

    // P(v, u) = sum over edges e containing v and u of 1 / (d(v) delta(e))
    ops.vertex_chain = Eigen::MatrixXd::Zero(idx(n), idx(n));
    for (std::size_t e = 0; e < m; ++e) {
        for (Vertex v : h.edge(e)) {
            const double p = 1.0 / static_cast<double>(deg.vertex[v] * deg.edge[e]);
            for (Vertex u : h.edge(e)) ops.vertex_chain(idx(v), idx(u)) += p;
        }
    }
    // Q(e, f) = sum over vertices v in e and f of 1 / (delta(e) d(v))
    ops.edge_chain = Eigen::MatrixXd::Zero(idx(m), idx(m));
    for (Vertex v = 0; v < n; ++v) {
        const auto& inc = h.incident_edges(v);
        for (std::size_t e : inc) {
            const double q = 1.0 / static_cast<double>(deg.edge[e] * deg.vertex[v]);
            for (std::size_t f : inc) ops.edge_chain(idx(e), idx(f)) += q;
        }
    }

    double volume = 0;
    for (auto d : deg.vertex) volume += static_cast<double>(d);
    ops.vertex_stationary.resize(idx(n));
    ops.edge_stationary.resize(idx(m));
    for (std::size_t v = 0; v < n; ++v) ops.vertex_stationary(idx(v)) = static_cast<double>(deg.vertex[v]) / volume;
    for (std::size_t e = 0; e < m; ++e) ops.edge_stationary(idx(e)) = static_cast<double>(deg.edge[e]) / volume;
    return ops;
}

DirectedWalkOperators build_directed_operators(const DirectedHypergraph& d)
{
    const std::size_t n = d.num_vertices();
    const std::size_t m = d.num_arcs();
    require_dense_size(n, m);
    for (Vertex v = 0; v < n; ++v) {
        if (d.outgoing(v).empty()) throw ValidationError("vertex " + std::to_string(v) + " originates no arc");
    }

    DirectedWalkOperators ops;
    ops.vertex_arc = Eigen::MatrixXd::Zero(idx(n), idx(m));
    ops.arc_vertex = Eigen::MatrixXd::Zero(idx(m), idx(n));
    for (Vertex v = 0; v < n; ++v) {
        const double w = 1.0 / static_cast<double>(d.outgoing(v).size());
        for (std::size_t a : d.outgoing(v)) ops.vertex_arc(idx(v), idx(a)) = w;
    }
    for (std::size_t a = 0; a < m; ++a) {
        const auto& dst = d.arc(a).dst;
        const double w = 1.0 / static_cast<double>(dst.size());
        for (Vertex u : dst) ops.arc_vertex(idx(a), idx(u)) = w;
    }
    ops.vertex_chain = ops.vertex_arc * ops.arc_vertex;
    ops.arc_chain = ops.arc_vertex * ops.vertex_arc;
    ops.irreducible = is_irreducible(ops.vertex_chain);
    return ops;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> stationary(const Hypergraph& h)
{
    require_walkable(h);
    const Degrees deg = degrees(h);
    double volume = 0;
    for (auto d : deg.vertex) volume += static_cast<double>(d);
    Eigen::VectorXd pi(idx(h.num_vertices()));
    Eigen::VectorXd zeta(idx(h.num_edges()));
    for (std::size_t v = 0; v < deg.vertex.size(); ++v) pi(idx(v)) = static_cast<double>(deg.vertex[v]) / volume;
    for (std::size_t e = 0; e < deg.edge.size(); ++e) zeta(idx(e)) = static_cast<double>(deg.edge[e]) / volume;
    return {pi, zeta};
}

double stochastic_deviation(const Eigen::MatrixXd& m)
{
    if ((m.array() < 0).any()) return std::numeric_limits<double>::infinity();
    double worst = 0;
    for (Index i = 0; i < m.rows(); ++i) worst = std::max(worst, std::abs(m.row(i).sum() - 1.0));
    return worst;
}

bool is_irreducible(const Eigen::MatrixXd& transition)
{
    if (transition.rows() == 0) return false;
    return reaches_all(transition, false) && reaches_all(transition, true);
}

DeviationReport coupling_check(const Eigen::MatrixXd& vertex_edge, const Eigen::MatrixXd& edge_vertex,
                               const Eigen::MatrixXd& vertex_chain, const Eigen::MatrixXd& edge_chain,
                               int steps, double tol)
{
    if (steps < 1) throw ValidationError("coupling check needs at least one step");
    DeviationReport report;
    report.tolerance = tol;
    // prev_* hold the (s-1)-th powers, starting from the identity.
    Eigen::MatrixXd prev_p = Eigen::MatrixXd::Identity(vertex_chain.rows(), vertex_chain.cols());
    Eigen::MatrixXd prev_q = Eigen::MatrixXd::Identity(edge_chain.rows(), edge_chain.cols());
    for (int s = 1; s <= steps; ++s) {
        const Eigen::MatrixXd via_edges = vertex_edge * prev_q * edge_vertex;
        const Eigen::MatrixXd via_vertices = edge_vertex * prev_p * vertex_edge;
        prev_p = prev_p * vertex_chain;
        prev_q = prev_q * edge_chain;
        report.max_deviation = std::max(report.max_deviation, (prev_p - via_edges).cwiseAbs().maxCoeff());
        report.max_deviation = std::max(report.max_deviation, (prev_q - via_vertices).cwiseAbs().maxCoeff());
    }
    report.passed = report.max_deviation <= tol;
    return report;
}

DeviationReport coupling_check(const Hypergraph& h, int steps, double tol)
{
    const WalkOperators ops = build_operators(h);
    return coupling_check(ops.vertex_edge, ops.edge_vertex, ops.vertex_chain, ops.edge_chain, steps, tol);
}

std::vector<std::complex<double>> nonzero_eigenvalues(const Eigen::MatrixXd& m, double tol)
{
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
    std::vector<std::complex<double>> out;
    for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const auto lambda = solver.eigenvalues()(i);
        if (std::abs(lambda) > tol) out.push_back(lambda);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

SpectrumReport spectrum_check(const Eigen::MatrixXd& vertex_chain, const Eigen::MatrixXd& edge_chain, double tol)
{
    SpectrumReport report;
    report.tolerance = tol;
    report.vertex_nonzero = nonzero_eigenvalues(vertex_chain, tol);
    report.edge_nonzero = nonzero_eigenvalues(edge_chain, tol);
    if (report.vertex_nonzero.size() != report.edge_nonzero.size()) {
        report.max_pair_distance = std::numeric_limits<double>::infinity();
        return report;
    }
    // Greedy nearest pairing over the sorted lists.
    std::vector<bool> used(report.edge_nonzero.size(), false);
    for (const auto& lambda : report.vertex_nonzero) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < report.edge_nonzero.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::abs(lambda - report.edge_nonzero[j]);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        used[best] = true;
        report.max_pair_distance = std::max(report.max_pair_distance, best_dist);
    }
    report.passed = report.max_pair_distance <= tol;
    return report;
}

SpectrumReport spectrum_check(const Hypergraph& h, double tol)
{
    const WalkOperators ops = build_operators(h);
    return spectrum_check(ops.vertex_chain, ops.edge_chain, tol);
}

Eigen::MatrixXd lift_transition(const Eigen::MatrixXd& vertex_edge, const Eigen::MatrixXd& edge_vertex)
{
    const Index n = vertex_edge.rows();
    const Index m = vertex_edge.cols();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n + m, n + m);
    p.topRightCorner(n, m) = vertex_edge;
    p.bottomLeftCorner(m, n) = edge_vertex;
    return p;
}

DeviationReport lift_walk_check(const Hypergraph& h, double tol)
{
    const WalkOperators ops = build_operators(h);
    const Eigen::MatrixXd lift = lift_transition(ops.vertex_edge, ops.edge_vertex);
    const Eigen::MatrixXd two_steps = lift * lift;
    const Index n = ops.vertex_chain.rows();
    const Index m = ops.edge_chain.rows();
    DeviationReport report;
    report.tolerance = tol;
    report.max_deviation = std::max((two_steps.topLeftCorner(n, n) - ops.vertex_chain).cwiseAbs().maxCoeff(),
                                    (two_steps.bottomRightCorner(m, m) - ops.edge_chain).cwiseAbs().maxCoeff());
    // Odd-length returns are impossible on a bipartite graph.
    report.max_deviation = std::max(report.max_deviation, two_steps.topRightCorner(n, m).cwiseAbs().maxCoeff());
    report.passed = report.max_deviation <= tol;
    return report;
}

} // namespace hyperwalk
