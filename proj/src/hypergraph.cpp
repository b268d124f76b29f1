#include "hyperwalk/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "hyperwalk/error.hpp"

namespace hyperwalk {
namespace {

// Validates one member set in place (sorted on return).
void check_members(VertexSet& members, std::size_t n, const std::string& where)
{
    if (members.empty()) {
        throw ValidationError(where + ": empty vertex set");
    }
    for (Vertex v : members) {
        if (v >= n) {
            std::ostringstream msg;
            msg << where << ": vertex " << v << " out of range (n = " << n << ")";
            throw ValidationError(msg.str());
        }
    }
    std::sort(members.begin(), members.end());
    auto dup = std::adjacent_find(members.begin(), members.end());
    if (dup != members.end()) {
        std::ostringstream msg;
        msg << where << ": vertex " << *dup << " listed twice";
        throw ValidationError(msg.str());
    }
}

void check_labels(const std::vector<std::string>& labels, std::size_t n)
{
    if (!labels.empty() && labels.size() != n) {
        std::ostringstream msg;
        msg << "labels: expected " << n << " entries, got " << labels.size();
        throw ValidationError(msg.str());
    }
}

struct DisjointSets {
    std::vector<std::size_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

Hypergraph::Hypergraph(std::size_t n, std::vector<VertexSet> edges, std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), incident_(n), labels_(std::move(labels))
{
    if (n_ == 0) throw ValidationError("hyper-graph needs at least one vertex");
    check_labels(labels_, n_);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        check_members(edges_[e], n_, "edge " + std::to_string(e));
        for (Vertex v : edges_[e]) incident_[v].push_back(e);
        rank_ = std::max(rank_, edges_[e].size());
    }
}

DirectedHypergraph::DirectedHypergraph(std::size_t n, std::vector<Arc> arcs, std::vector<std::string> labels)
    : n_(n), arcs_(std::move(arcs)), outgoing_(n), labels_(std::move(labels))
{
    if (n_ == 0) throw ValidationError("hyper-graph needs at least one vertex");
    check_labels(labels_, n_);
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
        check_members(arcs_[a].org, n_, "arc " + std::to_string(a) + " org");
        check_members(arcs_[a].dst, n_, "arc " + std::to_string(a) + " dst");
        for (Vertex v : arcs_[a].org) outgoing_[v].push_back(a);
    }
}

bool DirectedHypergraph::satisfies_radio_constraint() const noexcept
{
    return std::all_of(arcs_.begin(), arcs_.end(), [](const Arc& a) {
        return a.org.size() == 1 && !std::binary_search(a.dst.begin(), a.dst.end(), a.org.front());
    });
}

RadioHypergraph::RadioHypergraph(DirectedHypergraph d) : d_(std::move(d))
{
    for (std::size_t a = 0; a < d_.num_arcs(); ++a) {
        const Arc& arc = d_.arc(a);
        if (arc.org.size() != 1) {
            throw ValidationError("arc " + std::to_string(a) + ": radio arcs need exactly one origin");
        }
        if (std::binary_search(arc.dst.begin(), arc.dst.end(), arc.org.front())) {
            throw ValidationError("arc " + std::to_string(a) + ": origin listed among its receivers");
        }
    }
}

Degrees degrees(const Hypergraph& h)
{
    Degrees out;
    out.vertex.resize(h.num_vertices());
    for (Vertex v = 0; v < h.num_vertices(); ++v) out.vertex[v] = h.incident_edges(v).size();
    out.edge.reserve(h.num_edges());
    for (const auto& e : h.edges()) out.edge.push_back(e.size());
    out.rank = h.rank();
    return out;
}

Eigen::MatrixXd incidence_matrix(const Hypergraph& h)
{
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(h.num_vertices()),
                                              static_cast<Eigen::Index>(h.num_edges()));
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        for (Vertex v : h.edge(e)) w(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(e)) = 1.0;
    }
    return w;
}

std::vector<VertexSet> components(const Hypergraph& h)
{
    DisjointSets sets(h.num_vertices());
    for (const auto& e : h.edges()) {
        for (Vertex v : e) sets.unite(e.front(), v);
    }
    std::vector<VertexSet> out;
    std::vector<std::size_t> slot(h.num_vertices(), h.num_vertices());
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        std::size_t root = sets.find(v);
        if (slot[root] == h.num_vertices()) {
            slot[root] = out.size();
            out.emplace_back();
        }
        out[slot[root]].push_back(v);
    }
    return out;
}

bool is_connected(const Hypergraph& h)
{
    return components(h).size() == 1;
}

bool BipartiteLift::is_connected() const
{
    const std::size_t total = num_nodes();
    if (total == 0) return false;
    std::vector<std::vector<std::size_t>> adj(total);
    for (auto [v, e] : links) {
        adj[v].push_back(num_left + e);
        adj[num_left + e].push_back(v);
    }
    std::vector<bool> seen(total, false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        std::size_t x = frontier.front();
        frontier.pop();
        for (std::size_t y : adj[x]) {
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                frontier.push(y);
            }
        }
    }
    return reached == total;
}

Eigen::MatrixXd BipartiteLift::adjacency() const
{
    const auto total = static_cast<Eigen::Index>(num_nodes());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(total, total);
    for (auto [v, e] : links) {
        const auto i = static_cast<Eigen::Index>(v);
        const auto j = static_cast<Eigen::Index>(num_left + e);
        a(i, j) = 1.0;
        a(j, i) = 1.0;
    }
    return a;
}

BipartiteLift bipartite_lift(const Hypergraph& h)
{
    BipartiteLift lift;
    lift.num_left = h.num_vertices();
    lift.num_right = h.num_edges();
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        for (Vertex v : h.edge(e)) lift.links.emplace_back(v, e);
    }
    return lift;
}

} // namespace hyperwalk
