#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "hyperwalk/hypergraph.hpp"

namespace hyperwalk {

/**
 * Combinatorial description of one walk step, shared by the exact solvers
 * and the simulator.
 *
 * From vertex v the walk picks uniformly among choices(v), then lands
 * uniformly in landing(e). Every member of heard_by(e) hears that
 * transmission. For undirected hyper-graphs all three sets come from the
 * edge itself; for directed ones the choice is over arcs originating at v,
 * the landing set is the destination, and org and dst both hear.
 */
class WalkModel {
public:
    /// Throws InfeasibleError if some vertex lies in no edge.
    explicit WalkModel(const Hypergraph& h);
    /// Throws ValidationError if some vertex originates no arc.
    explicit WalkModel(const DirectedHypergraph& d);
    explicit WalkModel(const RadioHypergraph& r) : WalkModel(r.directed()) {}

    std::size_t num_vertices() const noexcept { return choices_.size(); }
    std::size_t num_edges() const noexcept { return landing_.size(); }
    bool directed() const noexcept { return directed_; }

    const std::vector<std::size_t>& choices(Vertex v) const { return choices_[v]; }
    const VertexSet& landing(std::size_t e) const { return landing_[e]; }
    const VertexSet& heard_by(std::size_t e) const { return heard_[e]; }

    /// Largest hearing set; the rank for undirected hyper-graphs.
    std::size_t rank() const noexcept { return rank_; }

    Eigen::MatrixXd vertex_edge() const;
    Eigen::MatrixXd edge_vertex() const;

private:
    bool directed_ = false;
    std::vector<std::vector<std::size_t>> choices_;
    std::vector<VertexSet> landing_;
    std::vector<VertexSet> heard_;
    std::size_t rank_ = 0;
};

} // namespace hyperwalk
