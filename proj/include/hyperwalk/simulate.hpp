#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hyperwalk/hypergraph.hpp"
#include "hyperwalk/io.hpp"
#include "hyperwalk/walk_model.hpp"

namespace hyperwalk {

struct Step {
    std::size_t edge = 0;
    Vertex vertex = 0;
};

struct Trajectory {
    Vertex start = 0;
    std::vector<Step> steps;
};

/// Reproducible per-trial generator: the stream is a pure function of
/// (seed, tag, start, trial).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t start, std::uint64_t trial);

/// Walks `steps` transmissions from `start`. Deterministic in `seed`.
Trajectory simulate_walk(const WalkModel& model, Vertex start, std::size_t steps, std::uint64_t seed);

/// Fraction of time spent at each vertex over `steps` steps (the start
/// position is not counted).
std::vector<double> occupancy(const WalkModel& model, Vertex start, std::size_t steps, std::uint64_t seed);

enum class StartPolicy { fixed, all, stationary };

std::string to_string(StartPolicy policy);
/// Accepts "fixed", "all", "stationary"; throws ValidationError otherwise.
StartPolicy parse_start_policy(const std::string& text);

struct SimConfig {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::uint64_t cap = 0; // 0 selects default_step_cap
    StartPolicy policy = StartPolicy::all;
    Vertex start = 0;      // used by StartPolicy::fixed
    unsigned threads = 0;  // 0: hardware concurrency, capped by HYPERWALK_THREADS
};

/// 50 * 2 m n r for the model's edge count, vertex count and rank.
std::uint64_t default_step_cap(const WalkModel& model);

/// Workers to use for a request of `requested` (0 meaning "all cores"),
/// never more than HYPERWALK_THREADS when that is set.
unsigned worker_count(unsigned requested);

/// Sum by recursive halving; the result depends only on the order of xs.
double pairwise_sum(std::span<const double> xs);

struct Estimate {
    std::size_t trials = 0; // trials that finished below the cap
    std::size_t capped = 0;
    double mean = 0;
    double variance = 0; // sample variance (n - 1)
    double ci = 0;       // 1.96 * sqrt(variance / trials)

    double standard_error() const;
};

/// Summary of the finished values; `capped` trials are only counted.
Estimate summarize(std::span<const double> finished, std::size_t capped);

struct StartEstimate {
    Vertex start = 0;
    Estimate estimate;
    std::vector<double> values;         // one per trial, in trial order
    std::vector<std::uint8_t> was_capped; // 1 where the trial hit the cap
};

/**
 * Cover estimate. Under StartPolicy::all every start is screened with
 * `trials` trials, then the start with the largest screening mean is
 * re-run on `trials` fresh trials; `estimate` comes from that second run,
 * so it is not inflated by picking the maximum of noisy means.
 */
struct SimReport {
    std::string quantity;
    StartPolicy policy = StartPolicy::all;
    std::uint64_t seed = 0;
    std::uint64_t cap = 0;
    std::size_t trials = 0; // per start
    Estimate estimate;      // of the reported start (or the stationary mix)
    Vertex argmax_start = 0;
    bool valid = true;      // at most 1% of all trials capped
    std::vector<StartEstimate> per_start;
    std::optional<StartEstimate> confirmation;
};

Json to_json(const Estimate& e);
Json to_json(const SimReport& r);
/// Rows "stage,start,trial,value,capped"; stage is screen or confirm.
void write_trials_csv(std::ostream& out, const SimReport& r);

SimReport estimate_cover(const WalkModel& model, const SimConfig& config);
SimReport estimate_radio_cover(const WalkModel& model, const SimConfig& config);

enum class Passage { visit, heard };

struct PassageConfig {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::uint64_t cap = 0;
    unsigned threads = 0;
};

/**
 * First-passage times from `start` to each single target, from shared
 * trajectories: one walk per trial runs until every target has been
 * reached (visited, or heard for Passage::heard) or the cap is hit.
 * Entry j estimates h(start, targets[j]) or its radio counterpart.
 */
std::vector<Estimate> estimate_first_passage(const WalkModel& model, Vertex start, std::span<const Vertex> targets,
                                             Passage kind, const PassageConfig& config);

struct SpeedupReport {
    double hitting_max = 0;
    double radio_hitting_max = 0;
    double radio_hitting_raw_max = 0;
    double hitting_speedup = 0;     // h_max / h~_max
    double hitting_speedup_raw = 0; // h_max / raw h~_max (inf when that is 0)
    SimReport cover;
    SimReport radio_cover;
    double cover_speedup = 0;
    double cover_speedup_ci = 0; // delta method on the ratio of means
};

/// Exact hitting speedup plus a Monte Carlo cover speedup; both cover runs
/// use `config`.
SpeedupReport estimate_speedups(const Hypergraph& h, const SimConfig& config);

Json to_json(const SpeedupReport& r);

} // namespace hyperwalk
