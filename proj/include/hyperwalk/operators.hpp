#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperwalk/hypergraph.hpp"

namespace hyperwalk {

/// Upper limit on vertices + edges for every dense-matrix operation.
inline constexpr std::size_t kMaxDenseStates = 2000;

/// Throws ValidationError when n + m exceeds kMaxDenseStates.
void require_dense_size(std::size_t vertices, std::size_t edges);

/**
 * Transition operators of the simple walk on an undirected hyper-graph.
 *
 * The walk at v picks an incident edge uniformly and then a member of that
 * edge uniformly (possibly v itself). vertex_chain and edge_chain are built
 * by direct enumeration of edges and vertices, independently of the
 * products vertex_edge * edge_vertex and edge_vertex * vertex_edge.
 */
struct WalkOperators {
    Eigen::MatrixXd vertex_edge;       // n x m, D_v^-1 W
    Eigen::MatrixXd edge_vertex;       // m x n, D_e^-1 W^T
    Eigen::MatrixXd vertex_chain;      // n x n walk on vertices
    Eigen::MatrixXd edge_chain;        // m x m walk on edges
    Eigen::VectorXd vertex_stationary; // d(v) / Vol(V)
    Eigen::VectorXd edge_stationary;   // delta(e) / Vol(E)
};

/// Throws InfeasibleError if h is disconnected or has an edgeless vertex.
WalkOperators build_operators(const Hypergraph& h);

/**
 * Operators of the walk on a directed hyper-graph: leave v through an arc
 * whose origin contains v (uniformly), land uniformly in its destination.
 */
struct DirectedWalkOperators {
    Eigen::MatrixXd vertex_arc;   // n x m, row-normalised origin incidence
    Eigen::MatrixXd arc_vertex;   // m x n, row-normalised destination incidence
    Eigen::MatrixXd vertex_chain; // vertex_arc * arc_vertex
    Eigen::MatrixXd arc_chain;    // arc_vertex * vertex_arc
    bool irreducible = false;     // vertex chain strongly connected
};

/// Throws ValidationError if some vertex originates no arc. A reducible
/// chain is reported through `irreducible`, not as an error.
DirectedWalkOperators build_directed_operators(const DirectedHypergraph& d);

/// (vertex stationary, edge stationary). Throws InfeasibleError when h is
/// disconnected.
std::pair<Eigen::VectorXd, Eigen::VectorXd> stationary(const Hypergraph& h);

/// max_i |sum_j M(i, j) - 1|, or +inf if some entry is negative.
double stochastic_deviation(const Eigen::MatrixXd& m);

/// True iff the directed graph of positive entries is strongly connected.
bool is_irreducible(const Eigen::MatrixXd& transition);

struct DeviationReport {
    double max_deviation = 0;
    double tolerance = 0;
    bool passed = false;
};

/**
 * Checks, for every step count s in 1..steps and every basis start,
 *   P^s = A Q^(s-1) B   and   Q^s = B P^(s-1) A.
 */
DeviationReport coupling_check(const Eigen::MatrixXd& vertex_edge, const Eigen::MatrixXd& edge_vertex,
                               const Eigen::MatrixXd& vertex_chain, const Eigen::MatrixXd& edge_chain,
                               int steps, double tol);
DeviationReport coupling_check(const Hypergraph& h, int steps, double tol);

struct SpectrumReport {
    std::vector<std::complex<double>> vertex_nonzero;
    std::vector<std::complex<double>> edge_nonzero;
    double max_pair_distance = 0; // +inf when the counts differ
    double tolerance = 0;
    bool passed = false;
};

/// Eigenvalues with modulus above tol (relative to spectral radius 1),
/// sorted by real part then imaginary part.
std::vector<std::complex<double>> nonzero_eigenvalues(const Eigen::MatrixXd& m, double tol);

/// Matches the nonzero spectra of the two chains as multisets.
SpectrumReport spectrum_check(const Eigen::MatrixXd& vertex_chain, const Eigen::MatrixXd& edge_chain, double tol);
SpectrumReport spectrum_check(const Hypergraph& h, double tol);

/// Transition matrix of the simple walk on the bipartite lift,
/// [[0, vertex_edge], [edge_vertex, 0]].
Eigen::MatrixXd lift_transition(const Eigen::MatrixXd& vertex_edge, const Eigen::MatrixXd& edge_vertex);

/// Squares the lift chain and compares its diagonal blocks with the vertex
/// and edge chains.
DeviationReport lift_walk_check(const Hypergraph& h, double tol = 1e-12);

} // namespace hyperwalk
