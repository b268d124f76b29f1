#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperwalk/hypergraph.hpp"

namespace hyperwalk {

/// Undirected multigraph without self-loops. Parallel edges count towards
/// degrees and act as parallel 1-ohm resistors.
class Graph {
public:
    using Edge = std::pair<Vertex, Vertex>;

    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Distinct neighbours of v, ascending.
    const VertexSet& neighbors(Vertex v) const { return neighbors_.at(v); }
    /// Number of edge endpoints at v (with multiplicity).
    std::size_t degree(Vertex v) const { return degree_.at(v); }

    std::vector<VertexSet> components() const;
    bool is_connected() const { return components().size() == 1; }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<VertexSet> neighbors_;
    std::vector<std::size_t> degree_;
};

/// Non-lazy simple random walk: P(v, u) = multiplicity(v, u) / deg(v).
Eigen::MatrixXd simple_walk_matrix(const Graph& g);

/// The 2-uniform hyper-graph with one edge per graph edge.
Hypergraph to_hypergraph(const Graph& g);

/// One arc per vertex v with origin {v} and receivers N(v).
/// Throws ValidationError on an isolated vertex.
RadioHypergraph radio_from_graph(const Graph& g);

/**
 * Graph on which the vertex walk of a radio hyper-graph is the simple walk.
 *
 * Requires exactly one arc per vertex and a symmetric receiver relation
 * (u hears v iff v hears u); otherwise throws ValidationError.
 */
Graph walk_graph(const RadioHypergraph& r);

} // namespace hyperwalk
