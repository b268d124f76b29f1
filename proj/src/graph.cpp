#include "hyperwalk/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "hyperwalk/error.hpp"

namespace hyperwalk {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), neighbors_(n), degree_(n, 0)
{
    if (n_ == 0) throw ValidationError("graph needs at least one vertex");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        auto [a, b] = edges_[i];
        if (a >= n_ || b >= n_) {
            throw ValidationError("graph edge " + std::to_string(i) + ": endpoint out of range");
        }
        if (a == b) throw ValidationError("graph edge " + std::to_string(i) + ": self-loop");
        neighbors_[a].push_back(b);
        neighbors_[b].push_back(a);
        ++degree_[a];
        ++degree_[b];
    }
    for (auto& nb : neighbors_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
}

std::vector<VertexSet> Graph::components() const
{
    std::vector<VertexSet> out;
    std::vector<bool> seen(n_, false);
    for (Vertex s = 0; s < n_; ++s) {
        if (seen[s]) continue;
        VertexSet comp;
        std::queue<Vertex> frontier;
        frontier.push(s);
        seen[s] = true;
        while (!frontier.empty()) {
            Vertex x = frontier.front();
            frontier.pop();
            comp.push_back(x);
            for (Vertex y : neighbors_[x]) {
                if (!seen[y]) {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

Eigen::MatrixXd simple_walk_matrix(const Graph& g)
{
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (auto [a, b] : g.edges()) {
        p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += 1.0;
        p(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) += 1.0;
    }
    for (Eigen::Index v = 0; v < n; ++v) {
        const double d = static_cast<double>(g.degree(static_cast<Vertex>(v)));
        if (d > 0) p.row(v) /= d;
    }
    return p;
}

Hypergraph to_hypergraph(const Graph& g)
{
    std::vector<VertexSet> edges;
    edges.reserve(g.num_edges());
    for (auto [a, b] : g.edges()) edges.push_back({a, b});
    return Hypergraph(g.num_vertices(), std::move(edges));
}

RadioHypergraph radio_from_graph(const Graph& g)
{
    std::vector<Arc> arcs;
    arcs.reserve(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (g.neighbors(v).empty()) {
            throw ValidationError("vertex " + std::to_string(v) + " is isolated; its arc would have no receivers");
        }
        arcs.push_back(Arc{{v}, g.neighbors(v)});
    }
    return RadioHypergraph(DirectedHypergraph(g.num_vertices(), std::move(arcs)));
}

Graph walk_graph(const RadioHypergraph& r)
{
    const std::size_t n = r.num_vertices();
    std::vector<const VertexSet*> hears(n, nullptr);
    for (std::size_t a = 0; a < r.num_arcs(); ++a) {
        Vertex o = r.origin(a);
        if (hears[o] != nullptr) {
            throw ValidationError("vertex " + std::to_string(o) + " originates more than one arc");
        }
        hears[o] = &r.receivers(a);
    }
    std::vector<Graph::Edge> edges;
    for (Vertex v = 0; v < n; ++v) {
        if (hears[v] == nullptr) throw ValidationError("vertex " + std::to_string(v) + " originates no arc");
    }
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex u : *hears[v]) {
            if (!std::binary_search(hears[u]->begin(), hears[u]->end(), v)) {
                throw ValidationError("receiver relation is not symmetric between vertices " +
                                      std::to_string(v) + " and " + std::to_string(u));
            }
            if (v < u) edges.emplace_back(v, u);
        }
    }
    return Graph(n, std::move(edges));
}

} // namespace hyperwalk
