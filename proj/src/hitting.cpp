#include "hyperwalk/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hyperwalk/error.hpp"

namespace hyperwalk {
namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

constexpr double kRefineThreshold = 1e-9;

std::vector<std::size_t> normalized_targets(std::span<const std::size_t> targets, std::size_t states)
{
    if (targets.empty()) throw ValidationError("target set is empty");
    std::vector<std::size_t> out(targets.begin(), targets.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.back() >= states) {
        throw ValidationError("target " + std::to_string(out.back()) + " out of range (" + std::to_string(states) +
                              " states)");
    }
    return out;
}

// Marks every state with a positive-probability path into `seed`, moving
// backwards only through states for which `passable` holds.
void mark_backward(const Eigen::MatrixXd& m, std::vector<bool>& marked, const std::vector<bool>& passable)
{
    const std::size_t n = marked.size();
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        if (marked[i]) stack.push_back(i);
    }
    while (!stack.empty()) {
        const std::size_t j = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            if (!marked[i] && passable[i] && m(idx(i), idx(j)) > 0) {
                marked[i] = true;
                stack.push_back(i);
            }
        }
    }
}

std::string describe_components(const std::vector<VertexSet>& comps)
{
    std::ostringstream out;
    out << comps.size() << " components:";
    for (const auto& c : comps) {
        out << " {";
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
        out << "}";
    }
    return out.str();
}

} // namespace

HittingResult hitting_times(const Eigen::MatrixXd& transition, std::span<const std::size_t> targets)
{
    if (transition.rows() != transition.cols()) throw ValidationError("transition matrix must be square");
    const std::size_t n = static_cast<std::size_t>(transition.rows());
    HittingResult result;
    result.targets = normalized_targets(targets, n);

    std::vector<bool> in_target(n, false);
    for (std::size_t t : result.targets) in_target[t] = true;

    std::vector<bool> reaches = in_target;
    mark_backward(transition, reaches, std::vector<bool>(n, true));

    // Off-target states that can step into a state which never reaches the
    // targets have infinite expected hitting time as well.
    std::vector<bool> infinite(n, false);
    std::vector<bool> off_target(n);
    for (std::size_t i = 0; i < n; ++i) {
        infinite[i] = !reaches[i];
        off_target[i] = !in_target[i];
    }
    mark_backward(transition, infinite, off_target);

    std::vector<std::size_t> free;
    std::vector<Index> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_target[i] && !infinite[i]) {
            slot[i] = idx(free.size());
            free.push_back(i);
        }
    }

    result.values.assign(n, 0.0);
    result.finite.assign(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        if (infinite[i]) {
            result.values[i] = kUnreachable;
            result.finite[i] = false;
        }
    }
    if (free.empty()) return result;

    const Index k = idx(free.size());
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(k, k);
    for (Index r = 0; r < k; ++r) {
        for (Index c = 0; c < k; ++c) system(r, c) -= transition(idx(free[static_cast<std::size_t>(r)]),
                                                                 idx(free[static_cast<std::size_t>(c)]));
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(k);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    Eigen::VectorXd h = lu.solve(ones);
    Eigen::VectorXd residual = ones - system * h;
    if (residual.cwiseAbs().maxCoeff() > kRefineThreshold) {
        h += lu.solve(residual);
        residual = ones - system * h;
    }
    if (!h.allFinite()) throw std::logic_error("hitting system singular after reachability masking");
    result.residual = residual.cwiseAbs().maxCoeff();
    for (Index r = 0; r < k; ++r) result.values[free[static_cast<std::size_t>(r)]] = h(r);
    return result;
}

Eigen::MatrixXd entry_distribution(const Eigen::MatrixXd& transition, std::span<const std::size_t> targets)
{
    const std::size_t n = static_cast<std::size_t>(transition.rows());
    if (targets.empty()) throw ValidationError("target set is empty");
    std::vector<Index> column(n, -1);
    for (std::size_t j = 0; j < targets.size(); ++j) {
        if (targets[j] >= n) throw ValidationError("target out of range");
        column[targets[j]] = idx(j);
    }
    std::vector<bool> in_target(n, false);
    for (std::size_t t : targets) in_target[t] = true;
    std::vector<bool> reaches = in_target;
    mark_backward(transition, reaches, std::vector<bool>(n, true));

    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_target[i] && reaches[i]) free.push_back(i);
    }
    const Index cols = idx(targets.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(idx(n), cols);
    for (std::size_t t : targets) out(idx(t), column[t]) = 1.0;
    if (free.empty()) return out;

    const Index k = idx(free.size());
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(k, k);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(k, cols);
    for (Index r = 0; r < k; ++r) {
        const Index i = idx(free[static_cast<std::size_t>(r)]);
        for (Index c = 0; c < k; ++c) system(r, c) -= transition(i, idx(free[static_cast<std::size_t>(c)]));
        for (std::size_t j = 0; j < targets.size(); ++j) rhs(r, idx(j)) = transition(i, idx(targets[j]));
    }
    const Eigen::MatrixXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(system).solve(rhs);
    for (Index r = 0; r < k; ++r) out.row(idx(free[static_cast<std::size_t>(r)])) = x.row(r);
    return out;
}

Extremum argmax_pair(const Eigen::MatrixXd& table)
{
    Extremum best;
    best.value = -kUnreachable;
    for (Index s = 0; s < table.rows(); ++s) {
        for (Index t = 0; t < table.cols(); ++t) {
            const double v = table(s, t);
            // Values from separate solves that agree to ~1e-12 are ties.
            const double slack = std::isfinite(v) ? 1e-12 * std::max(1.0, std::abs(v)) : 0.0;
            if (v > best.value + slack) {
                best = Extremum{v, static_cast<Vertex>(s), static_cast<Vertex>(t)};
            }
        }
    }
    return best;
}

ExactAnalyzer::ExactAnalyzer(const WalkModel& model)
    : vertex_edge_(model.vertex_edge())
{
    heard_.reserve(model.num_edges());
    for (std::size_t e = 0; e < model.num_edges(); ++e) heard_.push_back(model.heard_by(e));
    const Eigen::MatrixXd edge_vertex = model.edge_vertex();
    vertex_chain_ = vertex_edge_ * edge_vertex;
    edge_chain_ = edge_vertex * vertex_edge_;
}

namespace {

const Hypergraph& require_connected(const Hypergraph& h)
{
    auto comps = components(h);
    if (comps.size() != 1) throw InfeasibleError("hyper-graph is disconnected: " + describe_components(comps));
    return h;
}

} // namespace

ExactAnalyzer::ExactAnalyzer(const Hypergraph& h) : ExactAnalyzer(WalkModel(require_connected(h))) {}

HittingResult ExactAnalyzer::hitting(std::span<const Vertex> targets) const
{
    return hitting_times(vertex_chain_, targets);
}

double ExactAnalyzer::hitting(Vertex from, std::span<const Vertex> targets) const
{
    if (from >= num_vertices()) throw ValidationError("start vertex out of range");
    return hitting(targets).values[from];
}

std::vector<std::size_t> ExactAnalyzer::heard_edges(std::span<const Vertex> targets) const
{
    std::vector<Vertex> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < heard_.size(); ++e) {
        const auto& hear = heard_[e];
        auto meets = std::find_if(hear.begin(), hear.end(),
                                  [&](Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); });
        if (meets != hear.end()) out.push_back(e);
    }
    return out;
}

namespace {

double expected_under(const Eigen::MatrixXd& vertex_edge, Vertex from, const std::vector<double>& edge_values)
{
    double total = 0;
    for (Index e = 0; e < vertex_edge.cols(); ++e) {
        const double w = vertex_edge(idx(from), e);
        if (w > 0) total += w * edge_values[static_cast<std::size_t>(e)];
    }
    return total;
}

} // namespace

RadioHitting ExactAnalyzer::radio_hitting(Vertex from, std::span<const Vertex> targets) const
{
    if (from >= num_vertices()) throw ValidationError("start vertex out of range");
    RadioHitting out;
    out.start = from;
    out.targets = normalized_targets(targets, num_vertices());
    if (std::binary_search(out.targets.begin(), out.targets.end(), from)) return out;

    out.start_distribution = vertex_edge_.row(idx(from)).transpose();
    out.target_edges = heard_edges(out.targets);
    if (out.target_edges.empty()) {
        out.raw = out.value = kUnreachable;
        return out;
    }
    out.edge_hitting = hitting_times(edge_chain_, out.target_edges);
    out.raw = expected_under(vertex_edge_, from, out.edge_hitting.values);
    out.value = 1.0 + out.raw;
    return out;
}

std::vector<double> ExactAnalyzer::radio_hitting_all(std::span<const Vertex> targets, std::vector<double>* raw) const
{
    const auto sorted = normalized_targets(targets, num_vertices());
    const auto edges = heard_edges(sorted);
    std::vector<double> edge_values;
    if (!edges.empty()) edge_values = hitting_times(edge_chain_, edges).values;

    std::vector<double> values(num_vertices());
    if (raw) raw->assign(num_vertices(), 0.0);
    for (Vertex v = 0; v < num_vertices(); ++v) {
        if (std::binary_search(sorted.begin(), sorted.end(), v)) {
            values[v] = 0;
            continue;
        }
        const double r = edges.empty() ? kUnreachable : expected_under(vertex_edge_, v, edge_values);
        values[v] = 1.0 + r;
        if (raw) (*raw)[v] = r;
    }
    return values;
}

Eigen::MatrixXd ExactAnalyzer::hitting_matrix() const
{
    const std::size_t n = num_vertices();
    Eigen::MatrixXd table(idx(n), idx(n));
    for (Vertex u = 0; u < n; ++u) {
        const Vertex target[] = {u};
        const auto result = hitting(target);
        for (Vertex v = 0; v < n; ++v) table(idx(v), idx(u)) = result.values[v];
    }
    return table;
}

Eigen::MatrixXd ExactAnalyzer::radio_hitting_matrix(Eigen::MatrixXd* raw) const
{
    const std::size_t n = num_vertices();
    Eigen::MatrixXd table(idx(n), idx(n));
    if (raw) raw->resize(idx(n), idx(n));
    std::vector<double> raw_column;
    for (Vertex u = 0; u < n; ++u) {
        const Vertex target[] = {u};
        const auto column = radio_hitting_all(target, raw ? &raw_column : nullptr);
        for (Vertex v = 0; v < n; ++v) {
            table(idx(v), idx(u)) = column[v];
            if (raw) (*raw)(idx(v), idx(u)) = raw_column[v];
        }
    }
    return table;
}

RadioHitting radio_hitting(const Hypergraph& h, Vertex from, const VertexSet& targets)
{
    return ExactAnalyzer(h).radio_hitting(from, targets);
}

RadioHitting radio_hitting_directed(const RadioHypergraph& r, Vertex from, const VertexSet& targets)
{
    return ExactAnalyzer(r).radio_hitting(from, targets);
}

Extremum max_hitting(const Hypergraph& h)
{
    return ExactAnalyzer(h).max_hitting();
}

Extremum max_radio_hitting(const Hypergraph& h)
{
    return ExactAnalyzer(h).max_radio_hitting();
}

} // namespace hyperwalk
