#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperwalk/graph.hpp"
#include "hyperwalk/hypergraph.hpp"
#include "hyperwalk/io.hpp"

namespace hyperwalk {

/// k-uniform sliding windows {i, ..., i+k-1}, i = 0 .. n-k. Needs 2 <= k <= n.
Hypergraph hyperline(std::size_t n, std::size_t k);

/// k-hop radio line: the arc of v reaches every u with 0 < dist(u, v) <= k,
/// circular distance on a ring, clipped on a line. Needs 1 <= k < n/2.
RadioHypergraph radio_line(std::size_t n, std::size_t k, bool ring);

/// k-hop radio mesh on a side x side torus, node id row * side + col, arcs
/// reaching L1 torus distance 1..k (2k(k+1) receivers). Needs side >= 3 and
/// 1 <= k < side/2.
RadioHypergraph mesh2d(std::size_t side, std::size_t k);

/// One edge holding all n vertices.
Hypergraph single_edge(std::size_t n);

/**
 * All c-subsets of a clique part {0, ..., n'-1} joined at vertex 0 to a
 * 2-uniform line through n'-1 extra vertices n', ..., 2n'-2 (far end 2n'-2).
 * Needs 2 <= c <= n' and C(n', c) <= 1e5.
 */
Hypergraph clique_line(std::size_t n_prime, std::size_t c);

/// Index of the line end farthest from the clique part of clique_line(n_prime, ·).
inline Vertex clique_line_far_end(std::size_t n_prime) { return 2 * n_prime - 2; }

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);

/// Points within `radius` (Euclidean) are adjacent.
Graph unit_disk_graph(std::span<const Point> points, double radius);
/// Radio lift of the unit-disk graph. Needs >= 2 points and a connected
/// graph; throws InfeasibleError listing the components otherwise.
RadioHypergraph unit_disk(std::span<const Point> points, double radius);

/// m independent uniform k-subsets of n vertices, redrawn until connected
/// (at most 1000 attempts, then InfeasibleError).
Hypergraph random_uniform(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed);

/// Random spanning tree (vertex i attaches to a uniform earlier vertex)
/// plus every other pair independently with probability p.
Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed);

std::uint64_t binomial(std::size_t n, std::size_t k);

/// Named generator with its parameters, as accepted by `hyperwalk gen`.
struct FamilySpec {
    std::string name; // hyperline, radio-line, mesh2d, single-edge, clique-line,
                      // unit-disk, random-uniform, random-graph, complete-radio
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t m = 0;
    std::size_t c = 0;
    std::size_t side = 0;
    bool ring = true;
    double radius = 1.0;
    double p = 0.1;
    std::uint64_t seed = 0;
    std::vector<Point> points;

    AnyHypergraph generate() const;
    Json to_json() const;
};

const std::vector<std::string>& family_names();

} // namespace hyperwalk
