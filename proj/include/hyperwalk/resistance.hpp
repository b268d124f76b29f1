#pragma once

#include <string>

#include <Eigen/Dense>

#include "hyperwalk/graph.hpp"

namespace hyperwalk {

/// Effective resistance between u and v with a 1-ohm resistor per edge,
/// from one grounded Laplacian solve. Throws InfeasibleError when g is
/// disconnected.
double effective_resistance(const Graph& g, Vertex u, Vertex v);

/// All-pairs effective resistance from the inverse of the Laplacian
/// grounded at vertex 0.
class ResistanceTable {
public:
    explicit ResistanceTable(const Graph& g);

    double operator()(Vertex u, Vertex v) const { return table_(Eigen::Index(u), Eigen::Index(v)); }
    const Eigen::MatrixXd& matrix() const noexcept { return table_; }
    double max() const { return table_.maxCoeff(); }

private:
    Eigen::MatrixXd table_;
};

struct CommuteReport {
    Vertex u = 0;
    Vertex v = 0;
    double commute = 0;    // h(u, v) + h(v, u) of the simple walk
    double resistance = 0; // R_uv
    std::size_t edges = 0;
    double residual = 0;   // |commute - 2 m R_uv|
    bool passed = false;
};

/// Compares the commute time of the non-lazy simple walk with 2 m R_uv.
CommuteReport commute_check(const Graph& g, Vertex u, Vertex v, double tol = 1e-8);

/// Sum of R_uv over the edges of g (n - 1 for connected g).
double foster_sum(const Graph& g);

/**
 * Hitting-time identities on a vertex-transitive radio hyper-graph.
 *
 * Let T be the first time the walk from u enters N(v) and p its entry
 * distribution over N(v). With w a neighbour of v, the report compares
 *
 *   h(u, v)          vs  h(u, N(v)) + E_p[h(x, v)]
 *   raw radio(u, v)  vs  h(u, v) - E_p[h(x, v)]
 *   raw radio(u, v)  vs  m (R_uv - E_p[R_xv])
 *
 * where m is the number of edges of the walk graph. When all neighbours of
 * v are equivalent, E_p[h(x, v)] = h(w, v) and E_p[R_xv] = R_wv for every
 * neighbour w; `neighbors_equivalent` records whether that is the case.
 *
 * Inputs that fail the transitivity screen (regular walk graph with
 * identical sorted resistance rows) are reported as skipped with a warning.
 */
struct TransitiveReport {
    bool checked = false;
    std::string warning;
    Vertex u = 0;
    Vertex v = 0;
    Vertex w = 0;
    bool neighbors_equivalent = false;
    std::size_t edges = 0;

    double hitting_uv = 0;
    double hitting_u_neighbors = 0;
    double hitting_wv = 0;
    double entry_hitting_v = 0; // E_p[h(x, v)]
    double radio_raw = 0;
    double radio = 0;
    double resistance_uv = 0;
    double resistance_wv = 0;
    double entry_resistance_v = 0; // E_p[R_xv]

    double decomposition_residual = 0;
    double radio_hitting_residual = 0;
    double radio_resistance_residual = 0;

    double max_residual() const;
    bool passed(double tol) const { return checked && max_residual() <= tol; }
};

TransitiveReport transitive_identities(const RadioHypergraph& r, Vertex u, Vertex v);

} // namespace hyperwalk
