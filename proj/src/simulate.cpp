#include "hyperwalk/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <queue>
#include <thread>

#include "hyperwalk/error.hpp"
#include "hyperwalk/hitting.hpp"

namespace hyperwalk {
namespace {

constexpr std::uint64_t kCoverTag = 1;
constexpr std::uint64_t kRadioCoverTag = 2;
constexpr std::uint64_t kPassageTag = 3;
constexpr std::uint64_t kWalkTag = 4;
constexpr std::uint64_t kConfirmTag = 32;

std::size_t uniform_index(std::mt19937_64& rng, std::size_t size)
{
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

struct Move {
    std::size_t edge;
    Vertex vertex;
};

Move step(const WalkModel& model, Vertex at, std::mt19937_64& rng)
{
    const auto& options = model.choices(at);
    const std::size_t e = options[uniform_index(rng, options.size())];
    const VertexSet& land = model.landing(e);
    return {e, land[uniform_index(rng, land.size())]};
}

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn)
{
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(1, count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    }
}

bool reaches_all(const WalkModel& model, Vertex from, bool reverse)
{
    const std::size_t n = model.num_vertices();
    std::vector<VertexSet> adj(n);
    for (Vertex v = 0; v < n; ++v) {
        for (std::size_t e : model.choices(v)) {
            for (Vertex u : model.landing(e)) {
                if (reverse) adj[u].push_back(v);
                else adj[v].push_back(u);
            }
        }
    }
    std::vector<bool> seen(n, false);
    std::queue<Vertex> frontier;
    seen[from] = true;
    frontier.push(from);
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const Vertex x = frontier.front();
        frontier.pop();
        for (Vertex y : adj[x]) {
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                frontier.push(y);
            }
        }
    }
    return reached == n;
}

void require_strongly_connected(const WalkModel& model)
{
    if (model.num_vertices() > 1 && !(reaches_all(model, 0, false) && reaches_all(model, 0, true))) {
        throw InfeasibleError("walk is not irreducible: some vertex cannot reach every other");
    }
}

std::vector<double> vertex_stationary(const WalkModel& model)
{
    const Eigen::MatrixXd p = model.vertex_edge() * model.edge_vertex();
    const Eigen::Index n = p.rows();
    Eigen::MatrixXd system = (p - Eigen::MatrixXd::Identity(n, n)).transpose();
    system.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    const Eigen::VectorXd pi = system.partialPivLu().solve(rhs);
    std::vector<double> out(pi.data(), pi.data() + n);
    for (double& x : out) x = std::max(0.0, x);
    return out;
}

struct Outcome {
    std::uint64_t steps = 0;
    bool capped = false;
};

// Steps until every vertex is visited (or heard).
Outcome run_cover(const WalkModel& model, Vertex start, std::uint64_t cap, bool heard, std::mt19937_64& rng)
{
    const std::size_t n = model.num_vertices();
    std::vector<std::uint8_t> done(n, 0);
    done[start] = 1;
    std::size_t remaining = n - 1;
    Vertex at = start;
    std::uint64_t t = 0;
    while (remaining > 0) {
        if (t == cap) return {t, true};
        const Move m = step(model, at, rng);
        ++t;
        at = m.vertex;
        if (heard) {
            for (Vertex u : model.heard_by(m.edge)) {
                if (!done[u]) {
                    done[u] = 1;
                    --remaining;
                }
            }
        } else if (!done[at]) {
            done[at] = 1;
            --remaining;
        }
    }
    return {t, false};
}

StartEstimate finish_start(Vertex start, std::vector<Outcome> outcomes)
{
    StartEstimate s;
    s.start = start;
    std::vector<double> finished;
    std::size_t capped = 0;
    for (const Outcome& o : outcomes) {
        s.values.push_back(static_cast<double>(o.steps));
        s.was_capped.push_back(o.capped ? 1 : 0);
        if (o.capped) ++capped;
        else finished.push_back(static_cast<double>(o.steps));
    }
    s.estimate = summarize(finished, capped);
    return s;
}

SimReport estimate_cover_impl(const WalkModel& model, const SimConfig& config, bool heard)
{
    const std::size_t n = model.num_vertices();
    if (config.trials == 0) throw ValidationError("trials must be positive");
    if (config.policy == StartPolicy::fixed && config.start >= n) {
        throw ValidationError("start vertex " + std::to_string(config.start) + " out of range (n = " +
                              std::to_string(n) + ")");
    }
    require_strongly_connected(model);

    SimReport report;
    report.quantity = heard ? "radio_cover" : "cover";
    report.policy = config.policy;
    report.seed = config.seed;
    report.cap = config.cap == 0 ? default_step_cap(model) : config.cap;
    report.trials = config.trials;
    const std::uint64_t tag = heard ? kRadioCoverTag : kCoverTag;
    const unsigned workers = worker_count(config.threads);

    std::vector<Vertex> starts;
    if (config.policy == StartPolicy::fixed) starts = {config.start};
    else if (config.policy == StartPolicy::all) {
        for (Vertex v = 0; v < n; ++v) starts.push_back(v);
    }

    if (config.policy == StartPolicy::stationary) {
        const std::vector<double> pi = vertex_stationary(model);
        std::vector<Outcome> outcomes(config.trials);
        parallel_for(config.trials, workers, [&](std::size_t i) {
            auto rng = trial_rng(config.seed, tag, n, i);
            std::discrete_distribution<std::size_t> draw(pi.begin(), pi.end());
            const Vertex start = draw(rng);
            outcomes[i] = run_cover(model, start, report.cap, heard, rng);
        });
        report.per_start.push_back(finish_start(0, std::move(outcomes)));
    } else {
        const std::size_t total = starts.size() * config.trials;
        std::vector<Outcome> outcomes(total);
        parallel_for(total, workers, [&](std::size_t i) {
            const Vertex start = starts[i / config.trials];
            const std::size_t trial = i % config.trials;
            auto rng = trial_rng(config.seed, tag, start, trial);
            outcomes[i] = run_cover(model, start, report.cap, heard, rng);
        });
        for (std::size_t s = 0; s < starts.size(); ++s) {
            auto first = outcomes.begin() + static_cast<std::ptrdiff_t>(s * config.trials);
            report.per_start.push_back(
                finish_start(starts[s], std::vector<Outcome>(first, first + static_cast<std::ptrdiff_t>(config.trials))));
        }
    }

    std::size_t best = 0;
    std::size_t capped = 0;
    for (std::size_t s = 0; s < report.per_start.size(); ++s) {
        capped += report.per_start[s].estimate.capped;
        if (report.per_start[s].estimate.mean > report.per_start[best].estimate.mean) best = s;
    }
    report.argmax_start = report.per_start[best].start;
    report.estimate = report.per_start[best].estimate;
    std::size_t all_trials = report.per_start.size() * config.trials;

    // The largest of several noisy means overshoots the true maximum, so the
    // selected start is re-estimated on fresh trials.
    if (config.policy == StartPolicy::all && starts.size() > 1) {
        std::vector<Outcome> outcomes(config.trials);
        parallel_for(config.trials, workers, [&](std::size_t i) {
            auto rng = trial_rng(config.seed, tag + kConfirmTag, report.argmax_start, i);
            outcomes[i] = run_cover(model, report.argmax_start, report.cap, heard, rng);
        });
        report.confirmation = finish_start(report.argmax_start, std::move(outcomes));
        report.estimate = report.confirmation->estimate;
        capped += report.estimate.capped;
        all_trials += config.trials;
    }
    report.valid = static_cast<double>(capped) <= 0.01 * static_cast<double>(all_trials);
    return report;
}

} // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t start, std::uint64_t trial)
{
    auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
    auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(tag), lo(start), hi(start), lo(trial), hi(trial)};
    return std::mt19937_64(seq);
}

Trajectory simulate_walk(const WalkModel& model, Vertex start, std::size_t steps, std::uint64_t seed)
{
    if (start >= model.num_vertices()) throw ValidationError("start vertex out of range");
    auto rng = trial_rng(seed, kWalkTag, start, 0);
    Trajectory out;
    out.start = start;
    out.steps.reserve(steps);
    Vertex at = start;
    for (std::size_t t = 0; t < steps; ++t) {
        const Move m = step(model, at, rng);
        out.steps.push_back({m.edge, m.vertex});
        at = m.vertex;
    }
    return out;
}

std::vector<double> occupancy(const WalkModel& model, Vertex start, std::size_t steps, std::uint64_t seed)
{
    if (start >= model.num_vertices()) throw ValidationError("start vertex out of range");
    auto rng = trial_rng(seed, kWalkTag, start, 1);
    std::vector<std::uint64_t> counts(model.num_vertices(), 0);
    Vertex at = start;
    for (std::size_t t = 0; t < steps; ++t) {
        at = step(model, at, rng).vertex;
        ++counts[at];
    }
    std::vector<double> out(counts.size(), 0.0);
    if (steps > 0) {
        for (std::size_t v = 0; v < counts.size(); ++v) out[v] = static_cast<double>(counts[v]) / static_cast<double>(steps);
    }
    return out;
}

std::string to_string(StartPolicy policy)
{
    switch (policy) {
    case StartPolicy::fixed: return "fixed";
    case StartPolicy::all: return "all";
    case StartPolicy::stationary: return "stationary";
    }
    return "all";
}

StartPolicy parse_start_policy(const std::string& text)
{
    if (text == "fixed") return StartPolicy::fixed;
    if (text == "all") return StartPolicy::all;
    if (text == "stationary") return StartPolicy::stationary;
    throw ValidationError("unknown start policy '" + text + "' (expected fixed, all or stationary)");
}

std::uint64_t default_step_cap(const WalkModel& model)
{
    const auto m = static_cast<std::uint64_t>(model.num_edges());
    const auto n = static_cast<std::uint64_t>(model.num_vertices());
    const auto r = static_cast<std::uint64_t>(std::max<std::size_t>(1, model.rank()));
    return 50 * 2 * m * n * r;
}

unsigned worker_count(unsigned requested)
{
    unsigned workers = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HYPERWALK_THREADS")) {
        char* end = nullptr;
        const long limit = std::strtol(env, &end, 10);
        if (end != env && limit > 0) workers = std::min(workers, static_cast<unsigned>(limit));
    }
    return workers;
}

double pairwise_sum(std::span<const double> xs)
{
    if (xs.size() <= 8) {
        double s = 0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double Estimate::standard_error() const
{
    return trials == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(trials));
}

Estimate summarize(std::span<const double> finished, std::size_t capped)
{
    Estimate e;
    e.trials = finished.size();
    e.capped = capped;
    if (e.trials == 0) {
        e.mean = std::numeric_limits<double>::quiet_NaN();
        return e;
    }
    e.mean = pairwise_sum(finished) / static_cast<double>(e.trials);
    if (e.trials > 1) {
        std::vector<double> sq(finished.size());
        std::transform(finished.begin(), finished.end(), sq.begin(), [&](double x) { return (x - e.mean) * (x - e.mean); });
        e.variance = pairwise_sum(sq) / static_cast<double>(e.trials - 1);
    }
    e.ci = 1.96 * e.standard_error();
    return e;
}

Json to_json(const Estimate& e)
{
    Json j;
    j["trials"] = e.trials;
    j["capped"] = e.capped;
    j["mean"] = number_or_inf(e.mean);
    j["variance"] = number_or_inf(e.variance);
    j["ci"] = number_or_inf(e.ci);
    return j;
}

Json to_json(const SimReport& r)
{
    Json j;
    j["quantity"] = r.quantity;
    j["start_policy"] = to_string(r.policy);
    j["seed"] = r.seed;
    j["cap"] = r.cap;
    j["trials"] = r.trials;
    j["mean"] = number_or_inf(r.estimate.mean);
    j["variance"] = number_or_inf(r.estimate.variance);
    j["ci"] = number_or_inf(r.estimate.ci);
    j["capped"] = r.estimate.capped;
    std::size_t capped_total = r.confirmation ? r.confirmation->estimate.capped : 0;
    for (const auto& s : r.per_start) capped_total += s.estimate.capped;
    j["capped_total"] = capped_total;
    j["valid"] = r.valid;
    if (r.policy != StartPolicy::stationary) {
        j["argmax_start"] = r.argmax_start;
        j["confirmed"] = r.confirmation.has_value();
        Json starts = Json::array();
        for (const auto& s : r.per_start) {
            Json row = to_json(s.estimate);
            row["start"] = s.start;
            starts.push_back(std::move(row));
        }
        j["per_start"] = std::move(starts);
    }
    return j;
}

void write_trials_csv(std::ostream& out, const SimReport& r)
{
    out << "stage,start,trial,value,capped\n";
    const bool stationary = r.policy == StartPolicy::stationary;
    auto rows = [&](const StartEstimate& s, const char* stage) {
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            out << stage << ',';
            if (stationary) out << "stationary";
            else out << s.start;
            out << ',' << i << ',' << format_double(s.values[i]) << ',' << int(s.was_capped[i]) << '\n';
        }
    };
    for (const auto& s : r.per_start) rows(s, "screen");
    if (r.confirmation) rows(*r.confirmation, "confirm");
}

SimReport estimate_cover(const WalkModel& model, const SimConfig& config)
{
    return estimate_cover_impl(model, config, false);
}

SimReport estimate_radio_cover(const WalkModel& model, const SimConfig& config)
{
    return estimate_cover_impl(model, config, true);
}

std::vector<Estimate> estimate_first_passage(const WalkModel& model, Vertex start, std::span<const Vertex> targets,
                                             Passage kind, const PassageConfig& config)
{
    const std::size_t n = model.num_vertices();
    if (start >= n) throw ValidationError("start vertex out of range");
    for (Vertex u : targets) {
        if (u >= n) throw ValidationError("target vertex out of range");
    }
    if (config.trials == 0) throw ValidationError("trials must be positive");
    const std::uint64_t cap = config.cap == 0 ? default_step_cap(model) : config.cap;
    const std::size_t k = targets.size();
    std::vector<std::int64_t> slot(n, -1);
    for (std::size_t j = 0; j < k; ++j) slot[targets[j]] = static_cast<std::int64_t>(j);

    // times[i * k + j]: first passage of trial i at target j, or -1 if capped.
    std::vector<std::int64_t> times(config.trials * k, -1);
    parallel_for(config.trials, worker_count(config.threads), [&](std::size_t i) {
        auto rng = trial_rng(config.seed, kPassageTag + (kind == Passage::heard ? 16 : 0), start, i);
        std::int64_t* row = times.data() + i * k;
        std::size_t remaining = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (targets[j] == start) row[j] = 0;
        }
        for (std::size_t j = 0; j < k; ++j) remaining += row[j] < 0 ? 1 : 0;
        auto mark = [&](Vertex u, std::int64_t t) {
            const std::int64_t j = slot[u];
            if (j >= 0 && row[j] < 0) {
                row[j] = t;
                --remaining;
            }
        };
        Vertex at = start;
        for (std::uint64_t t = 1; remaining > 0 && t <= cap; ++t) {
            const Move m = step(model, at, rng);
            at = m.vertex;
            if (kind == Passage::heard) {
                for (Vertex u : model.heard_by(m.edge)) mark(u, static_cast<std::int64_t>(t));
            } else {
                mark(at, static_cast<std::int64_t>(t));
            }
        }
    });

    std::vector<Estimate> out;
    out.reserve(k);
    std::vector<double> finished;
    for (std::size_t j = 0; j < k; ++j) {
        finished.clear();
        std::size_t capped = 0;
        for (std::size_t i = 0; i < config.trials; ++i) {
            const std::int64_t t = times[i * k + j];
            if (t < 0) ++capped;
            else finished.push_back(static_cast<double>(t));
        }
        out.push_back(summarize(finished, capped));
    }
    return out;
}

SpeedupReport estimate_speedups(const Hypergraph& h, const SimConfig& config)
{
    const ExactAnalyzer exact(h);
    SpeedupReport r;
    Eigen::MatrixXd raw;
    r.hitting_max = exact.max_hitting().value;
    r.radio_hitting_max = argmax_pair(exact.radio_hitting_matrix(&raw)).value;
    r.radio_hitting_raw_max = argmax_pair(raw).value;
    r.hitting_speedup = r.radio_hitting_max > 0 ? r.hitting_max / r.radio_hitting_max : 1.0;
    r.hitting_speedup_raw =
        r.radio_hitting_raw_max > 0 ? r.hitting_max / r.radio_hitting_raw_max : std::numeric_limits<double>::infinity();

    const WalkModel model(h);
    r.cover = estimate_cover(model, config);
    r.radio_cover = estimate_radio_cover(model, config);
    const double c = r.cover.estimate.mean;
    const double rc = r.radio_cover.estimate.mean;
    if (rc > 0) {
        r.cover_speedup = c / rc;
        const double rel_c = c > 0 ? r.cover.estimate.ci / c : 0.0;
        const double rel_rc = r.radio_cover.estimate.ci / rc;
        r.cover_speedup_ci = r.cover_speedup * std::sqrt(rel_c * rel_c + rel_rc * rel_rc);
    } else {
        r.cover_speedup = 1.0; // single vertex: both covers are 0
    }
    return r;
}

Json to_json(const SpeedupReport& r)
{
    Json j;
    j["hitting_max"] = number_or_inf(r.hitting_max);
    j["radio_hitting_max"] = number_or_inf(r.radio_hitting_max);
    j["radio_hitting_raw_max"] = number_or_inf(r.radio_hitting_raw_max);
    j["hitting_speedup"] = number_or_inf(r.hitting_speedup);
    j["hitting_speedup_raw"] = number_or_inf(r.hitting_speedup_raw);
    j["cover_speedup"] = number_or_inf(r.cover_speedup);
    j["cover_speedup_ci"] = number_or_inf(r.cover_speedup_ci);
    j["cover"] = to_json(r.cover);
    j["radio_cover"] = to_json(r.radio_cover);
    return j;
}

} // namespace hyperwalk
