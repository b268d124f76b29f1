#include "hyperwalk/families.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "hyperwalk/error.hpp"

namespace hyperwalk {
namespace {

std::string param_error(const std::string& family, const std::string& detail)
{
    return family + ": " + detail;
}

std::string describe_components(const std::vector<VertexSet>& parts)
{
    std::ostringstream out;
    out << parts.size() << " components:";
    for (const auto& part : parts) {
        out << " {";
        for (std::size_t i = 0; i < part.size(); ++i) out << (i ? "," : "") << part[i];
        out << "}";
    }
    return out.str();
}

} // namespace

Hypergraph hyperline(std::size_t n, std::size_t k)
{
    if (k < 2 || k > n) throw ValidationError(param_error("hyperline", "need 2 <= k <= n"));
    std::vector<VertexSet> edges;
    for (std::size_t i = 0; i + k <= n; ++i) {
        VertexSet e(k);
        std::iota(e.begin(), e.end(), i);
        edges.push_back(std::move(e));
    }
    return Hypergraph(n, std::move(edges));
}

RadioHypergraph radio_line(std::size_t n, std::size_t k, bool ring)
{
    if (k < 1 || 2 * k >= n) throw ValidationError(param_error("radio_line", "need 1 <= k < n/2"));
    std::vector<Arc> arcs;
    arcs.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
        VertexSet dst;
        for (Vertex u = 0; u < n; ++u) {
            const std::size_t gap = u > v ? u - v : v - u;
            const std::size_t dist = ring ? std::min(gap, n - gap) : gap;
            if (dist >= 1 && dist <= k) dst.push_back(u);
        }
        arcs.push_back({{v}, std::move(dst)});
    }
    return RadioHypergraph(DirectedHypergraph(n, std::move(arcs)));
}

RadioHypergraph mesh2d(std::size_t side, std::size_t k)
{
    if (side < 3) throw ValidationError(param_error("mesh2d", "need side >= 3"));
    if (k < 1 || 2 * k >= side) throw ValidationError(param_error("mesh2d", "need 1 <= k < side/2"));
    const std::size_t n = side * side;
    auto torus = [side](std::size_t a, std::size_t b) {
        const std::size_t gap = a > b ? a - b : b - a;
        return std::min(gap, side - gap);
    };
    std::vector<Arc> arcs;
    arcs.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
        VertexSet dst;
        for (Vertex u = 0; u < n; ++u) {
            const std::size_t dist = torus(u / side, v / side) + torus(u % side, v % side);
            if (dist >= 1 && dist <= k) dst.push_back(u);
        }
        if (dst.size() != 2 * k * (k + 1)) throw std::logic_error("mesh2d: receiver count mismatch");
        arcs.push_back({{v}, std::move(dst)});
    }
    return RadioHypergraph(DirectedHypergraph(n, std::move(arcs)));
}

Hypergraph single_edge(std::size_t n)
{
    if (n < 1) throw ValidationError(param_error("single_edge", "need n >= 1"));
    VertexSet all(n);
    std::iota(all.begin(), all.end(), 0);
    return Hypergraph(n, {std::move(all)});
}

std::uint64_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    long double acc = 1;
    for (std::size_t i = 1; i <= k; ++i) acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    return static_cast<std::uint64_t>(std::llround(acc));
}

Hypergraph clique_line(std::size_t n_prime, std::size_t c)
{
    if (c < 2 || c > n_prime) throw ValidationError(param_error("clique_line", "need 2 <= c <= n'"));
    if (binomial(n_prime, c) > 100000) throw ValidationError(param_error("clique_line", "C(n', c) exceeds 1e5"));
    std::vector<VertexSet> edges;
    std::vector<bool> pick(n_prime, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(c), true);
    do {
        VertexSet e;
        for (Vertex v = 0; v < n_prime; ++v) {
            if (pick[v]) e.push_back(v);
        }
        edges.push_back(std::move(e));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    Vertex prev = 0;
    for (Vertex v = n_prime; v + 1 < 2 * n_prime; ++v) {
        edges.push_back({prev, v});
        prev = v;
    }
    return Hypergraph(2 * n_prime - 1, std::move(edges));
}

Graph complete_graph(std::size_t n)
{
    std::vector<Graph::Edge> edges;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    }
    return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n)
{
    if (n < 3) throw ValidationError("cycle needs n >= 3");
    std::vector<Graph::Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n)
{
    std::vector<Graph::Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, std::move(edges));
}

Graph unit_disk_graph(std::span<const Point> points, double radius)
{
    if (!(radius > 0)) throw ValidationError("unit_disk: radius must be positive");
    std::vector<Graph::Edge> edges;
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            if (std::hypot(points[a].x - points[b].x, points[a].y - points[b].y) <= radius) edges.emplace_back(a, b);
        }
    }
    return Graph(points.size(), std::move(edges));
}

RadioHypergraph unit_disk(std::span<const Point> points, double radius)
{
    if (points.size() < 2) throw ValidationError("unit_disk: need at least 2 points");
    const Graph g = unit_disk_graph(points, radius);
    const auto parts = g.components();
    if (parts.size() != 1) throw InfeasibleError("unit_disk: graph is disconnected, " + describe_components(parts));
    return radio_from_graph(g);
}

Hypergraph random_uniform(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed)
{
    if (k < 1 || k > n) throw ValidationError(param_error("random_uniform", "need 1 <= k <= n"));
    if (m < 1) throw ValidationError(param_error("random_uniform", "need m >= 1"));
    std::mt19937_64 rng(seed);
    std::vector<Vertex> pool(n);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<VertexSet> edges;
        edges.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::iota(pool.begin(), pool.end(), 0);
            for (std::size_t j = 0; j < k; ++j) {
                std::swap(pool[j], pool[std::uniform_int_distribution<std::size_t>(j, n - 1)(rng)]);
            }
            edges.emplace_back(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
        }
        Hypergraph h(n, std::move(edges));
        if (is_connected(h)) return h;
    }
    throw InfeasibleError("random_uniform: no connected instance after 1000 attempts");
}

Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed)
{
    if (n < 2) throw ValidationError("random graph needs n >= 2");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    std::vector<Graph::Edge> edges;
    for (Vertex v = 1; v < n; ++v) {
        const Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
        adj[u][v] = adj[v][u] = true;
        edges.emplace_back(u, v);
    }
    std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            if (!adj[a][b] && coin(rng)) edges.emplace_back(a, b);
        }
    }
    return Graph(n, std::move(edges));
}

const std::vector<std::string>& family_names()
{
    static const std::vector<std::string> names{"hyperline",   "radio-line", "mesh2d",       "single-edge",
                                                "clique-line", "unit-disk",  "random-uniform", "random-graph",
                                                "complete-radio"};
    return names;
}

AnyHypergraph FamilySpec::generate() const
{
    if (name == "hyperline") return hyperline(n, k);
    if (name == "radio-line") return radio_line(n, k, ring).directed();
    if (name == "mesh2d") return mesh2d(side, k).directed();
    if (name == "single-edge") return single_edge(n);
    if (name == "clique-line") return clique_line(n, c);
    if (name == "unit-disk") return unit_disk(points, radius).directed();
    if (name == "random-uniform") return random_uniform(n, m, k, seed);
    if (name == "random-graph") return to_hypergraph(random_connected_graph(n, p, seed));
    if (name == "complete-radio") {
        if (n < 2) throw ValidationError("complete-radio: need n >= 2");
        return radio_from_graph(complete_graph(n)).directed();
    }
    throw ValidationError("unknown family '" + name + "'");
}

Json FamilySpec::to_json() const
{
    Json j;
    j["family"] = name;
    if (name == "hyperline") {
        j["n"] = n;
        j["k"] = k;
    } else if (name == "radio-line") {
        j["n"] = n;
        j["k"] = k;
        j["ring"] = ring;
    } else if (name == "mesh2d") {
        j["side"] = side;
        j["k"] = k;
    } else if (name == "clique-line") {
        j["n_prime"] = n;
        j["c"] = c;
    } else if (name == "unit-disk") {
        j["points"] = points.size();
        j["radius"] = radius;
    } else if (name == "random-uniform") {
        j["n"] = n;
        j["m"] = m;
        j["k"] = k;
        j["seed"] = seed;
    } else if (name == "random-graph") {
        j["n"] = n;
        j["p"] = p;
        j["seed"] = seed;
    } else {
        j["n"] = n;
    }
    return j;
}

} // namespace hyperwalk
