#include "hyperwalk/walk_model.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "hyperwalk/error.hpp"
#include "hyperwalk/operators.hpp"

namespace hyperwalk {

WalkModel::WalkModel(const Hypergraph& h)
    : choices_(h.num_vertices()), landing_(h.edges()), heard_(h.edges()), rank_(h.rank())
{
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        choices_[v] = h.incident_edges(v);
        if (choices_[v].empty()) {
            throw InfeasibleError("vertex " + std::to_string(v) + " lies in no edge");
        }
    }
}

WalkModel::WalkModel(const DirectedHypergraph& d) : directed_(true), choices_(d.num_vertices())
{
    landing_.reserve(d.num_arcs());
    heard_.reserve(d.num_arcs());
    for (const Arc& a : d.arcs()) {
        landing_.push_back(a.dst);
        VertexSet hear;
        std::set_union(a.org.begin(), a.org.end(), a.dst.begin(), a.dst.end(), std::back_inserter(hear));
        rank_ = std::max(rank_, hear.size());
        heard_.push_back(std::move(hear));
    }
    for (Vertex v = 0; v < d.num_vertices(); ++v) {
        choices_[v] = d.outgoing(v);
        if (choices_[v].empty()) {
            throw ValidationError("vertex " + std::to_string(v) + " originates no arc");
        }
    }
}

Eigen::MatrixXd WalkModel::vertex_edge() const
{
    require_dense_size(num_vertices(), num_edges());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_vertices()),
                                              static_cast<Eigen::Index>(num_edges()));
    for (Vertex v = 0; v < num_vertices(); ++v) {
        const double w = 1.0 / static_cast<double>(choices_[v].size());
        for (std::size_t e : choices_[v]) a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(e)) += w;
    }
    return a;
}

Eigen::MatrixXd WalkModel::edge_vertex() const
{
    require_dense_size(num_vertices(), num_edges());
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_edges()),
                                              static_cast<Eigen::Index>(num_vertices()));
    for (std::size_t e = 0; e < num_edges(); ++e) {
        const double w = 1.0 / static_cast<double>(landing_[e].size());
        for (Vertex v : landing_[e]) b(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(v)) += w;
    }
    return b;
}

} // namespace hyperwalk
