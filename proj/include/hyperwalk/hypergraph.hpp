#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hyperwalk {

using Vertex = std::size_t;
using VertexSet = std::vector<Vertex>;

/**
 * Undirected hyper-graph on vertices 0..n-1.
 *
 * Edges are arbitrary nonempty vertex subsets and keep their input order.
 * Members of an edge are stored sorted. Repeated edges are allowed, so the
 * type also covers multi-hyper-graphs. Immutable after construction.
 */
class Hypergraph {
public:
    /// Throws ValidationError naming the offending edge index.
    Hypergraph(std::size_t n, std::vector<VertexSet> edges, std::vector<std::string> labels = {});

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<VertexSet>& edges() const noexcept { return edges_; }
    const VertexSet& edge(std::size_t e) const { return edges_.at(e); }

    /// Indices of the edges containing v, ascending.
    const std::vector<std::size_t>& incident_edges(Vertex v) const { return incident_.at(v); }

    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Maximum edge cardinality; 0 only for an edgeless hyper-graph.
    std::size_t rank() const noexcept { return rank_; }

private:
    std::size_t n_;
    std::vector<VertexSet> edges_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::string> labels_;
    std::size_t rank_ = 0;
};

struct Degrees {
    std::vector<std::size_t> vertex; // d(v) = |E(v)|
    std::vector<std::size_t> edge;   // delta(e) = |e|
    std::size_t rank = 0;
};

Degrees degrees(const Hypergraph& h);

/// n x m 0/1 matrix, entry (v, e) is 1 iff v is a member of e.
Eigen::MatrixXd incidence_matrix(const Hypergraph& h);

/// Vertex classes of the connected components, each sorted, ordered by
/// smallest member. An isolated vertex forms its own component.
std::vector<VertexSet> components(const Hypergraph& h);

bool is_connected(const Hypergraph& h);

/// Arc of a directed hyper-graph. Origin and destination may overlap.
struct Arc {
    VertexSet org;
    VertexSet dst;
};

class DirectedHypergraph {
public:
    DirectedHypergraph(std::size_t n, std::vector<Arc> arcs, std::vector<std::string> labels = {});

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_arcs() const noexcept { return arcs_.size(); }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    const Arc& arc(std::size_t a) const { return arcs_.at(a); }

    /// Arcs whose origin contains v, ascending.
    const std::vector<std::size_t>& outgoing(Vertex v) const { return outgoing_.at(v); }

    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// True iff every arc has a single origin vertex outside its destination.
    bool satisfies_radio_constraint() const noexcept;

private:
    std::size_t n_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::size_t>> outgoing_;
    std::vector<std::string> labels_;
};

/// Directed hyper-graph in which each arc is one transmitter and the set of
/// receivers that hear it.
class RadioHypergraph {
public:
    explicit RadioHypergraph(DirectedHypergraph d);

    const DirectedHypergraph& directed() const noexcept { return d_; }
    std::size_t num_vertices() const noexcept { return d_.num_vertices(); }
    std::size_t num_arcs() const noexcept { return d_.num_arcs(); }
    Vertex origin(std::size_t a) const { return d_.arc(a).org.front(); }
    const VertexSet& receivers(std::size_t a) const { return d_.arc(a).dst; }

private:
    DirectedHypergraph d_;
};

/// Bipartite graph on V (left) and E (right) with (v, e) linked iff v is in e.
struct BipartiteLift {
    std::size_t num_left = 0;
    std::size_t num_right = 0;
    std::vector<std::pair<Vertex, std::size_t>> links;

    std::size_t num_nodes() const noexcept { return num_left + num_right; }
    bool is_connected() const;
    /// Symmetric 0/1 adjacency over left nodes followed by right nodes.
    Eigen::MatrixXd adjacency() const;
};

BipartiteLift bipartite_lift(const Hypergraph& h);

} // namespace hyperwalk
