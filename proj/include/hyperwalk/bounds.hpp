#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "hyperwalk/families.hpp"
#include "hyperwalk/io.hpp"
#include "hyperwalk/simulate.hpp"

namespace hyperwalk {

/// H_n = 1 + 1/2 + ... + 1/n by direct summation.
double harmonic(std::size_t n);

/// h_max * H_n.
double matthews_bound(double hitting_max, std::size_t n);
/// e * ceil(2 ln n) * h~_max * (1 - 1/n) + n * H_n * h~_max / n.
double radio_matthews_bound(double radio_hitting_max, std::size_t n);
/// 2 m n r.
double mnr_bound(std::size_t n, std::size_t m, std::size_t r);
/// n * H_n.
double speedup_bound(std::size_t n);
/// n^2 / (k^2/3 + k/2 + 1/6).
double line1d_bound(std::size_t n, std::size_t k);

using Rational = boost::rational<long long>;

struct StepMoments {
    Rational drift;
    Rational second_moment; // E[D^2]; the variance since the drift is 0
};

/// One interior step of the k-hop radio line: uniform on {-k..-1, 1..k}.
StepMoments radio_line_step(std::size_t k);
/// One interior step of the k-uniform hyperline: a uniform window among the
/// k windows containing the walker, then a uniform position inside it.
StepMoments hyperline_step(std::size_t k);
/// k^2/3 + k/2 + 1/6.
Rational line1d_constant(std::size_t k);

struct Line1DMoments {
    std::size_t k = 0;
    Rational constant;
    StepMoments radio_line;
    StepMoments hyperline;
    bool radio_line_matches = false;
    bool hyperline_matches = false;
};

Line1DMoments line1d_step_moments(std::size_t k);
Json to_json(const Line1DMoments& m);

enum class Verdict { holds, violated, inconclusive };

std::string to_string(Verdict v);

/// violated iff measured - ci > bound; holds iff measured + ci <= bound.
Verdict judge(double measured, double ci, double bound);

struct BoundReport {
    std::string name;
    Json inputs = Json::object();
    double bound = 0;
    double measured = 0;
    double ci = 0; // 0 for exact measurements
    std::string measured_by; // "exact" or "monte_carlo"
    Verdict verdict = Verdict::holds;
    bool informational = false; // excluded from pass/fail
    std::string notes;
};

Json to_json(const BoundReport& r);

/// Names accepted by check_bounds.
const std::vector<std::string>& bound_check_names();

struct BoundConfig {
    SimConfig sim;
    std::vector<std::string> checks; // empty: all
};

/**
 * Evaluates the selected closed-form bounds on one instance, measuring
 * hitting extremes exactly and cover times by Monte Carlo (sim config).
 * Checks: matthews, matthews-radio, mnr, speedup, ch2. ch2 only applies to
 * graph-like inputs (2-uniform, or radio with a symmetric walk graph) and
 * is reported as informational otherwise.
 */
std::vector<BoundReport> check_bounds(const AnyHypergraph& h, const BoundConfig& config);

/// Simulated radio cover of radio_line(n, k, ring) (or of hyperline(n, k)
/// when `hyperline_model`, informational only) against line1d_bound.
BoundReport line1d_check(std::size_t n, std::size_t k, bool hyperline_model, const SimConfig& sim);

bool any_violated(const std::vector<BoundReport>& reports);

struct MeshTrendRow {
    std::size_t k = 0;
    std::size_t degree = 0; // 2k(k+1)
    double radio_hitting_max = 0;
    double scale = 0; // (n/d) ln(n/d)
    double ratio = 0;
    double min_resistance = 0;  // over sampled adjacent pairs
    double resistance_floor = 0; // 2/(d+1)
    bool resistance_ok = false;
    Estimate radio_cover; // from vertex 0; trials == 0 when not simulated
    double cover_scale = 0; // (n/k) ln(n/k) ln n
};

struct MeshTrendReport {
    std::size_t side = 0;
    std::vector<MeshTrendRow> rows;
    bool strictly_decreasing = false;
    double ratio_spread = 0; // max ratio / min ratio
    bool resistance_ok = false;
    std::size_t sampled_pairs = 0;
    Estimate complete_limit_cover; // radio cover with one arc reaching every node
    bool complete_limit_ok = false;
    bool passed() const { return strictly_decreasing && resistance_ok && complete_limit_ok; }
};

/// Radio hitting trend on mesh2d(side, k) for increasing k. `pairs`
/// adjacent (w, v) pairs are sampled per k from `seed`; cover times are
/// only simulated when trials > 0.
MeshTrendReport mesh2d_trend(std::size_t side, const std::vector<std::size_t>& ks, std::size_t trials,
                             std::uint64_t seed, std::size_t pairs = 20);
Json to_json(const MeshTrendReport& r);
void write_trend_csv(std::ostream& out, const MeshTrendReport& r);

struct LowerTrendRow {
    std::size_t n_prime = 0;
    std::size_t c = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    double mnc = 0;
    double clique_to_end = 0; // exact h~ from clique vertex 1 to the far line end
    double end_to_clique = 0; // exact h~ from the far line end to clique vertex 1
    Estimate simulated;       // Monte Carlo of clique_to_end; trials == 0 when skipped
};

struct LowerTrendReport {
    std::vector<LowerTrendRow> rows;
    double slope = 0;      // least squares of log h~ (clique to end) on log mnc
    double slope_end_to_clique = 0;
    bool monotone = false; // h~ (clique to end) increases with mnc
};

/// Exact radio hitting on clique_line(n', c) over the product grid.
LowerTrendReport lower_trend(const std::vector<std::size_t>& cs, const std::vector<std::size_t>& n_primes,
                             std::size_t trials, std::uint64_t seed);
Json to_json(const LowerTrendReport& r);

/// Family instances evaluated by the default bound suite.
std::vector<FamilySpec> default_bound_grid();

} // namespace hyperwalk
