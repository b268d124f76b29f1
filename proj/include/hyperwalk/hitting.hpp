#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hyperwalk/hypergraph.hpp"
#include "hyperwalk/walk_model.hpp"

namespace hyperwalk {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Expected hitting times of a target set, one entry per state.
struct HittingResult {
    std::vector<std::size_t> targets; // sorted, deduplicated
    std::vector<double> values;       // 0 on targets, +inf where hitting is not almost sure
    std::vector<bool> finite;         // reachability mask
    double residual = 0;              // max |h - 1 - M h| over finite off-target states
};

/**
 * Minimal non-negative solution of h = 0 on the targets and h = 1 + M h
 * elsewhere.
 *
 * States from which the chain can avoid the targets forever with positive
 * probability get +inf and are excluded from the dense LU solve. One step
 * of iterative refinement is applied when the residual exceeds 1e-9.
 * Throws ValidationError on an empty or out-of-range target set.
 */
HittingResult hitting_times(const Eigen::MatrixXd& transition, std::span<const std::size_t> targets);

/**
 * Distribution of the first target state entered: row i, column j is the
 * probability that the chain started at i first enters the targets at
 * targets[j] (targets in the order given). Target rows are unit vectors.
 */
Eigen::MatrixXd entry_distribution(const Eigen::MatrixXd& transition, std::span<const std::size_t> targets);

/**
 * Radio hitting time from a start vertex to a vertex set.
 *
 * `value` counts transmissions until some traversed edge is heard by the
 * target set (0 iff the start is in it). `raw` is the expected hitting time
 * of the edge chain started from the edge-choice distribution of the start
 * vertex, so value = 1 + raw off the target set.
 */
struct RadioHitting {
    Vertex start = 0;
    VertexSet targets;
    double value = 0;
    double raw = 0;
    Eigen::VectorXd start_distribution;   // over edges; empty when start is a target
    std::vector<std::size_t> target_edges; // edges heard by some target
    HittingResult edge_hitting;
};

struct Extremum {
    double value = 0;
    Vertex source = 0;
    Vertex target = 0;
};

/// Largest entry of a square table; ties go to the lexicographically
/// smallest (row, column).
Extremum argmax_pair(const Eigen::MatrixXd& table);

/**
 * Exact hitting and radio hitting queries on one walk.
 *
 * Builds the dense vertex and edge chains once. Queries are const and can
 * run concurrently.
 */
class ExactAnalyzer {
public:
    explicit ExactAnalyzer(const WalkModel& model);
    /// Throws InfeasibleError listing the components if h is disconnected.
    explicit ExactAnalyzer(const Hypergraph& h);
    explicit ExactAnalyzer(const DirectedHypergraph& d) : ExactAnalyzer(WalkModel(d)) {}
    explicit ExactAnalyzer(const RadioHypergraph& r) : ExactAnalyzer(WalkModel(r)) {}

    std::size_t num_vertices() const noexcept { return static_cast<std::size_t>(vertex_chain_.rows()); }
    std::size_t num_edges() const noexcept { return static_cast<std::size_t>(edge_chain_.rows()); }
    const Eigen::MatrixXd& vertex_chain() const noexcept { return vertex_chain_; }
    const Eigen::MatrixXd& edge_chain() const noexcept { return edge_chain_; }
    const Eigen::MatrixXd& vertex_edge() const noexcept { return vertex_edge_; }

    HittingResult hitting(std::span<const Vertex> targets) const;
    double hitting(Vertex from, std::span<const Vertex> targets) const;

    /// Edges whose hearing set meets the targets.
    std::vector<std::size_t> heard_edges(std::span<const Vertex> targets) const;

    RadioHitting radio_hitting(Vertex from, std::span<const Vertex> targets) const;

    /// Radio hitting value from every start with a single edge-chain solve;
    /// the raw values are written to `raw` when given.
    std::vector<double> radio_hitting_all(std::span<const Vertex> targets, std::vector<double>* raw = nullptr) const;

    /// (v, u) entry is h(v, {u}).
    Eigen::MatrixXd hitting_matrix() const;
    /// (v, u) entry is the radio value to {u}; raw values optionally.
    Eigen::MatrixXd radio_hitting_matrix(Eigen::MatrixXd* raw = nullptr) const;

    Extremum max_hitting() const { return argmax_pair(hitting_matrix()); }
    Extremum max_radio_hitting() const { return argmax_pair(radio_hitting_matrix()); }

private:
    std::vector<VertexSet> heard_;
    Eigen::MatrixXd vertex_edge_;
    Eigen::MatrixXd vertex_chain_;
    Eigen::MatrixXd edge_chain_;
};

RadioHitting radio_hitting(const Hypergraph& h, Vertex from, const VertexSet& targets);
RadioHitting radio_hitting_directed(const RadioHypergraph& r, Vertex from, const VertexSet& targets);
Extremum max_hitting(const Hypergraph& h);
Extremum max_radio_hitting(const Hypergraph& h);

} // namespace hyperwalk
