#include "hyperwalk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>

#include "hyperwalk/error.hpp"
#include "hyperwalk/graph.hpp"
#include "hyperwalk/hitting.hpp"
#include "hyperwalk/resistance.hpp"

namespace hyperwalk {
namespace {

double to_double(const Rational& q)
{
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Json rational_json(const Rational& q)
{
    Json j;
    j["numerator"] = q.numerator();
    j["denominator"] = q.denominator();
    j["value"] = to_double(q);
    return j;
}

bool wants(const BoundConfig& config, const std::string& name)
{
    return config.checks.empty() || std::find(config.checks.begin(), config.checks.end(), name) != config.checks.end();
}

// Graph whose simple walk (possibly made lazy) is the instance's walk.
std::optional<Graph> underlying_graph(const AnyHypergraph& any)
{
    if (const auto* h = std::get_if<Hypergraph>(&any)) {
        std::vector<Graph::Edge> edges;
        for (const auto& e : h->edges()) {
            if (e.size() != 2) return std::nullopt;
            edges.emplace_back(e[0], e[1]);
        }
        return Graph(h->num_vertices(), std::move(edges));
    }
    const auto& d = std::get<DirectedHypergraph>(any);
    if (!d.satisfies_radio_constraint()) return std::nullopt;
    try {
        return walk_graph(RadioHypergraph(d));
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

double ratio_ci(double num, double num_ci, double den, double den_ci)
{
    const double s = num / den;
    const double a = num > 0 ? num_ci / num : 0.0;
    const double b = den_ci / den;
    return s * std::sqrt(a * a + b * b);
}

BoundReport make_report(std::string name, Json inputs, double bound, double measured, double ci,
                        std::string measured_by)
{
    BoundReport r;
    r.name = std::move(name);
    r.inputs = std::move(inputs);
    r.bound = bound;
    r.measured = measured;
    r.ci = ci;
    r.measured_by = std::move(measured_by);
    r.verdict = judge(measured, ci, bound);
    return r;
}

} // namespace

double harmonic(std::size_t n)
{
    double h = 0;
    for (std::size_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
    return h;
}

double matthews_bound(double hitting_max, std::size_t n)
{
    if (n < 2) throw ValidationError("matthews bound needs n >= 2");
    return hitting_max * harmonic(n);
}

double radio_matthews_bound(double radio_hitting_max, std::size_t n)
{
    if (n < 2) throw ValidationError("radio matthews bound needs n >= 2");
    const double nd = static_cast<double>(n);
    const double rounds = std::ceil(2.0 * std::log(nd));
    return std::numbers::e * rounds * radio_hitting_max * (1.0 - 1.0 / nd) + nd * harmonic(n) * radio_hitting_max / nd;
}

double mnr_bound(std::size_t n, std::size_t m, std::size_t r)
{
    if (n == 0 || m == 0 || r == 0) throw ValidationError("mnr bound needs positive n, m, r");
    return 2.0 * static_cast<double>(m) * static_cast<double>(n) * static_cast<double>(r);
}

double speedup_bound(std::size_t n)
{
    if (n < 2) throw ValidationError("speedup bound needs n >= 2");
    return static_cast<double>(n) * harmonic(n);
}

Rational line1d_constant(std::size_t k)
{
    const auto kk = static_cast<long long>(k);
    return Rational(kk * kk, 3) + Rational(kk, 2) + Rational(1, 6);
}

double line1d_bound(std::size_t n, std::size_t k)
{
    if (k < 1 || k > n) throw ValidationError("line1d bound needs 1 <= k <= n");
    const double nd = static_cast<double>(n);
    return nd * nd / to_double(line1d_constant(k));
}

StepMoments radio_line_step(std::size_t k)
{
    if (k < 1) throw ValidationError("step moments need k >= 1");
    const auto kk = static_cast<long long>(k);
    StepMoments out;
    const Rational p(1, 2 * kk);
    for (long long d = -kk; d <= kk; ++d) {
        if (d == 0) continue;
        out.drift += p * d;
        out.second_moment += p * d * d;
    }
    return out;
}

StepMoments hyperline_step(std::size_t k)
{
    if (k < 1) throw ValidationError("step moments need k >= 1");
    const auto kk = static_cast<long long>(k);
    StepMoments out;
    const Rational p(1, kk * kk);
    // Window starting `back` positions behind the walker, then a position in it.
    for (long long back = 0; back < kk; ++back) {
        for (long long pos = 0; pos < kk; ++pos) {
            const long long d = pos - back;
            out.drift += p * d;
            out.second_moment += p * d * d;
        }
    }
    return out;
}

Line1DMoments line1d_step_moments(std::size_t k)
{
    Line1DMoments m;
    m.k = k;
    m.constant = line1d_constant(k);
    m.radio_line = radio_line_step(k);
    m.hyperline = hyperline_step(k);
    m.radio_line_matches = m.radio_line.drift == Rational(0) && m.radio_line.second_moment == m.constant;
    m.hyperline_matches = m.hyperline.drift == Rational(0) && m.hyperline.second_moment == m.constant;
    return m;
}

Json to_json(const Line1DMoments& m)
{
    Json j;
    j["k"] = m.k;
    j["constant"] = rational_json(m.constant);
    j["radio_line"] = {{"drift", rational_json(m.radio_line.drift)},
                       {"variance", rational_json(m.radio_line.second_moment)},
                       {"matches", m.radio_line_matches}};
    j["hyperline"] = {{"drift", rational_json(m.hyperline.drift)},
                      {"variance", rational_json(m.hyperline.second_moment)},
                      {"matches", m.hyperline_matches},
                      {"flagged", !m.hyperline_matches}};
    return j;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict judge(double measured, double ci, double bound)
{
    if (measured - ci > bound) return Verdict::violated;
    if (measured + ci <= bound) return Verdict::holds;
    return Verdict::inconclusive;
}

Json to_json(const BoundReport& r)
{
    Json j;
    j["name"] = r.name;
    j["inputs"] = r.inputs;
    j["bound"] = number_or_inf(r.bound);
    j["measured"] = number_or_inf(r.measured);
    j["ci"] = number_or_inf(r.ci);
    j["measured_by"] = r.measured_by;
    j["verdict"] = to_string(r.verdict);
    j["informational"] = r.informational;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

const std::vector<std::string>& bound_check_names()
{
    static const std::vector<std::string> names{"matthews", "matthews-radio", "mnr", "speedup", "ch2"};
    return names;
}

std::vector<BoundReport> check_bounds(const AnyHypergraph& any, const BoundConfig& config)
{
    for (const auto& name : config.checks) {
        const auto& known = bound_check_names();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw ValidationError("unknown bound check '" + name + "'");
        }
    }
    const WalkModel model = std::visit([](const auto& h) { return WalkModel(h); }, any);
    const std::size_t n = model.num_vertices();
    const std::size_t m = model.num_edges();
    const std::size_t r = model.rank();
    if (n < 2) throw ValidationError("bound checks need at least 2 vertices");
    const ExactAnalyzer exact = std::visit([](const auto& h) { return ExactAnalyzer(h); }, any);
    const bool need_cover = wants(config, "matthews") || wants(config, "mnr") || wants(config, "speedup") ||
                            wants(config, "ch2");
    const bool need_radio_cover = wants(config, "matthews-radio") || wants(config, "speedup");

    Json base;
    base["n"] = n;
    base["m"] = m;
    base["r"] = r;
    base["trials"] = config.sim.trials;
    base["seed"] = config.sim.seed;
    base["start_policy"] = to_string(config.sim.policy);

    std::optional<SimReport> cover;
    std::optional<SimReport> radio_cover;
    if (need_cover) cover = estimate_cover(model, config.sim);
    if (need_radio_cover) radio_cover = estimate_radio_cover(model, config.sim);
    if (cover) base["cap"] = cover->cap;
    else if (radio_cover) base["cap"] = radio_cover->cap;

    std::vector<BoundReport> out;
    if (wants(config, "matthews")) {
        const double h_max = exact.max_hitting().value;
        if (!std::isfinite(h_max)) throw InfeasibleError("walk is not irreducible; hitting times are infinite");
        Json in = base;
        in["h_max"] = h_max;
        out.push_back(make_report("matthews", in, matthews_bound(h_max, n), cover->estimate.mean, cover->estimate.ci,
                                  "monte_carlo"));
        if (!cover->valid) out.back().notes = "more than 1% of trials hit the step cap";
    }
    if (wants(config, "matthews-radio")) {
        const double rh_max = exact.max_radio_hitting().value;
        if (!std::isfinite(rh_max)) throw InfeasibleError("walk is not irreducible; radio hitting times are infinite");
        Json in = base;
        in["radio_h_max"] = rh_max;
        out.push_back(make_report("matthews-radio", in, radio_matthews_bound(rh_max, n), radio_cover->estimate.mean,
                                  radio_cover->estimate.ci, "monte_carlo"));
        if (!radio_cover->valid) out.back().notes = "more than 1% of trials hit the step cap";
    }
    if (wants(config, "mnr")) {
        out.push_back(
            make_report("mnr", base, mnr_bound(n, m, r), cover->estimate.mean, cover->estimate.ci, "monte_carlo"));
    }
    if (wants(config, "speedup")) {
        const double c = cover->estimate.mean;
        const double rc = radio_cover->estimate.mean;
        out.push_back(make_report("speedup", base, speedup_bound(n), c / rc,
                                  ratio_ci(c, cover->estimate.ci, rc, radio_cover->estimate.ci), "monte_carlo"));
        out.back().notes = "ratio of cover to radio cover, delta-method CI";
    }
    if (wants(config, "ch2")) {
        if (const auto g = underlying_graph(any)) {
            const double m_graph = static_cast<double>(g->num_edges());
            const double r_max = ResistanceTable(*g).max();
            Json in = base;
            in["graph_edges"] = g->num_edges();
            in["resistance_max"] = r_max;
            in["cover"] = cover->estimate.mean;
            in["cover_ci"] = cover->estimate.ci;
            // The cover estimate plus its CI plays the role of the bound.
            out.push_back(make_report("ch2", in, cover->estimate.mean + cover->estimate.ci, m_graph * r_max, 0.0,
                                      "exact"));
            out.back().notes = std::holds_alternative<Hypergraph>(any)
                                   ? "m R_max against the cover of the lazy walk, which dominates the simple walk"
                                   : "m R_max against the cover of the simple walk on the walk graph";
        }
    }
    return out;
}

BoundReport line1d_check(std::size_t n, std::size_t k, bool hyperline_model, const SimConfig& sim)
{
    const double bound = line1d_bound(n, k);
    Json in;
    in["n"] = n;
    in["k"] = k;
    in["model"] = hyperline_model ? "hyperline" : "radio_line_ring";
    in["trials"] = sim.trials;
    in["seed"] = sim.seed;
    in["start_policy"] = to_string(sim.policy);
    SimReport cover = hyperline_model ? estimate_radio_cover(WalkModel(hyperline(n, k)), sim)
                                      : estimate_radio_cover(WalkModel(radio_line(n, k, true)), sim);
    in["cap"] = cover.cap;
    BoundReport r = make_report("line1d", in, bound, cover.estimate.mean, cover.estimate.ci, "monte_carlo");
    if (hyperline_model) {
        r.informational = true;
        r.notes = "the hyperline step variance differs from the bound's constant; reported only";
    }
    if (!cover.valid) r.notes += (r.notes.empty() ? "" : "; ") + std::string("more than 1% of trials hit the step cap");
    return r;
}

bool any_violated(const std::vector<BoundReport>& reports)
{
    return std::any_of(reports.begin(), reports.end(),
                       [](const BoundReport& r) { return !r.informational && r.verdict == Verdict::violated; });
}

MeshTrendReport mesh2d_trend(std::size_t side, const std::vector<std::size_t>& ks, std::size_t trials,
                             std::uint64_t seed, std::size_t pairs)
{
    if (ks.empty()) throw ValidationError("mesh2d trend needs at least one k");
    if (!std::is_sorted(ks.begin(), ks.end()) || std::adjacent_find(ks.begin(), ks.end()) != ks.end()) {
        throw ValidationError("mesh2d trend needs strictly increasing k values");
    }
    MeshTrendReport report;
    report.side = side;
    report.sampled_pairs = pairs;
    const std::size_t n = side * side;
    const double nd = static_cast<double>(n);
    std::mt19937_64 rng(seed);
    report.resistance_ok = true;
    for (std::size_t k : ks) {
        const RadioHypergraph mesh = mesh2d(side, k);
        MeshTrendRow row;
        row.k = k;
        row.degree = 2 * k * (k + 1);
        const double d = static_cast<double>(row.degree);
        row.radio_hitting_max = ExactAnalyzer(mesh).max_radio_hitting().value;
        row.scale = (nd / d) * std::log(nd / d);
        row.ratio = row.radio_hitting_max / row.scale;

        const Graph g = walk_graph(mesh);
        const ResistanceTable resistance(g);
        row.resistance_floor = 2.0 / (d + 1.0);
        row.min_resistance = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pairs; ++i) {
            const Vertex v = std::uniform_int_distribution<Vertex>(0, n - 1)(rng);
            const VertexSet& nbrs = g.neighbors(v);
            const Vertex w = nbrs[std::uniform_int_distribution<std::size_t>(0, nbrs.size() - 1)(rng)];
            row.min_resistance = std::min(row.min_resistance, resistance(w, v));
        }
        row.resistance_ok = row.min_resistance >= row.resistance_floor - 1e-12;
        report.resistance_ok = report.resistance_ok && row.resistance_ok;

        const double kd = static_cast<double>(k);
        row.cover_scale = (nd / kd) * std::log(nd / kd) * std::log(nd);
        if (trials > 0) {
            SimConfig sim;
            sim.trials = trials;
            sim.seed = seed;
            sim.policy = StartPolicy::fixed;
            sim.start = 0;
            row.radio_cover = estimate_radio_cover(WalkModel(mesh), sim).estimate;
        }
        report.rows.push_back(row);
    }
    report.strictly_decreasing = true;
    double lo = report.rows.front().ratio;
    double hi = lo;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (!(report.rows[i].radio_hitting_max < report.rows[i - 1].radio_hitting_max)) report.strictly_decreasing = false;
        lo = std::min(lo, report.rows[i].ratio);
        hi = std::max(hi, report.rows[i].ratio);
    }
    report.ratio_spread = hi / lo;

    SimConfig limit;
    limit.trials = trials > 0 ? trials : 100;
    limit.seed = seed;
    limit.policy = StartPolicy::fixed;
    report.complete_limit_cover = estimate_radio_cover(WalkModel(radio_from_graph(complete_graph(n))), limit).estimate;
    report.complete_limit_ok = report.complete_limit_cover.capped == 0 && report.complete_limit_cover.mean == 1.0 &&
                               report.complete_limit_cover.variance == 0.0;
    return report;
}

Json to_json(const MeshTrendReport& r)
{
    Json j;
    j["side"] = r.side;
    j["n"] = r.side * r.side;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["k"] = row.k;
        x["degree"] = row.degree;
        x["radio_hitting_max"] = number_or_inf(row.radio_hitting_max);
        x["scale"] = row.scale;
        x["ratio"] = row.ratio;
        x["min_resistance"] = row.min_resistance;
        x["resistance_floor"] = row.resistance_floor;
        x["resistance_ok"] = row.resistance_ok;
        x["cover_scale"] = row.cover_scale;
        if (row.radio_cover.trials + row.radio_cover.capped > 0) x["radio_cover"] = to_json(row.radio_cover);
        rows.push_back(std::move(x));
    }
    j["rows"] = std::move(rows);
    j["strictly_decreasing"] = r.strictly_decreasing;
    j["ratio_spread"] = r.ratio_spread;
    j["sampled_pairs"] = r.sampled_pairs;
    j["resistance_ok"] = r.resistance_ok;
    j["complete_limit_cover"] = to_json(r.complete_limit_cover);
    j["complete_limit_ok"] = r.complete_limit_ok;
    j["passed"] = r.passed();
    return j;
}

void write_trend_csv(std::ostream& out, const MeshTrendReport& r)
{
    out << "k,degree,radio_hitting_max,scale,ratio,min_resistance,resistance_floor,radio_cover_mean,radio_cover_ci\n";
    for (const auto& row : r.rows) {
        const bool simulated = row.radio_cover.trials > 0;
        out << row.k << ',' << row.degree << ',' << format_double(row.radio_hitting_max) << ','
            << format_double(row.scale) << ',' << format_double(row.ratio) << ',' << format_double(row.min_resistance)
            << ',' << format_double(row.resistance_floor) << ','
            << (simulated ? format_double(row.radio_cover.mean) : "") << ','
            << (simulated ? format_double(row.radio_cover.ci) : "") << '\n';
    }
}

LowerTrendReport lower_trend(const std::vector<std::size_t>& cs, const std::vector<std::size_t>& n_primes,
                             std::size_t trials, std::uint64_t seed)
{
    if (cs.empty() || n_primes.empty()) throw ValidationError("lower trend needs non-empty c and n' lists");
    LowerTrendReport report;
    for (std::size_t np : n_primes) {
        for (std::size_t c : cs) {
            const Hypergraph h = clique_line(np, c);
            const ExactAnalyzer exact(h);
            LowerTrendRow row;
            row.n_prime = np;
            row.c = c;
            row.n = h.num_vertices();
            row.m = h.num_edges();
            row.mnc = static_cast<double>(row.m) * static_cast<double>(row.n) * static_cast<double>(c);
            const Vertex far = clique_line_far_end(np);
            const Vertex inner = 1;
            const Vertex to_far[] = {far};
            const Vertex to_inner[] = {inner};
            row.clique_to_end = exact.radio_hitting(inner, to_far).value;
            row.end_to_clique = exact.radio_hitting(far, to_inner).value;
            if (trials > 0) {
                PassageConfig pc;
                pc.trials = trials;
                pc.seed = seed;
                row.simulated = estimate_first_passage(WalkModel(h), inner, to_far, Passage::heard, pc).front();
            }
            report.rows.push_back(row);
        }
    }
    auto fit = [&](auto value) {
        const double count = static_cast<double>(report.rows.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& row : report.rows) {
            const double x = std::log(row.mnc);
            const double y = std::log(value(row));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = count * sxx - sx * sx;
        return std::abs(denom) < 1e-12 ? 0.0 : (count * sxy - sx * sy) / denom;
    };
    report.slope = fit([](const LowerTrendRow& r) { return r.clique_to_end; });
    report.slope_end_to_clique = fit([](const LowerTrendRow& r) { return r.end_to_clique; });

    std::vector<LowerTrendRow> sorted = report.rows;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.mnc < b.mnc; });
    report.monotone = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].mnc > sorted[i - 1].mnc && !(sorted[i].clique_to_end > sorted[i - 1].clique_to_end)) {
            report.monotone = false;
        }
    }
    return report;
}

Json to_json(const LowerTrendReport& r)
{
    Json j;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["n_prime"] = row.n_prime;
        x["c"] = row.c;
        x["n"] = row.n;
        x["m"] = row.m;
        x["mnc"] = row.mnc;
        x["clique_to_end"] = row.clique_to_end;
        x["end_to_clique"] = row.end_to_clique;
        if (row.simulated.trials + row.simulated.capped > 0) x["simulated"] = to_json(row.simulated);
        rows.push_back(std::move(x));
    }
    j["rows"] = std::move(rows);
    j["slope"] = r.slope;
    j["slope_end_to_clique"] = r.slope_end_to_clique;
    j["monotone"] = r.monotone;
    return j;
}

std::vector<FamilySpec> default_bound_grid()
{
    std::vector<FamilySpec> grid;
    auto add = [&](FamilySpec spec) { grid.push_back(std::move(spec)); };
    add({.name = "hyperline", .n = 3, .k = 2});
    add({.name = "hyperline", .n = 10, .k = 3});
    add({.name = "hyperline", .n = 20, .k = 5});
    add({.name = "single-edge", .n = 4});
    add({.name = "single-edge", .n = 16});
    add({.name = "radio-line", .n = 20, .k = 2, .ring = true});
    add({.name = "radio-line", .n = 15, .k = 3, .ring = false});
    add({.name = "mesh2d", .k = 1, .side = 5});
    add({.name = "mesh2d", .k = 2, .side = 7});
    add({.name = "clique-line", .n = 4, .c = 2});
    add({.name = "clique-line", .n = 6, .c = 3});
    add({.name = "random-uniform", .n = 12, .k = 3, .m = 8, .seed = 1});
    add({.name = "random-graph", .n = 12, .p = 0.2, .seed = 2});
    FamilySpec disk{.name = "unit-disk", .radius = 1.5};
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) disk.points.push_back({double(x), double(y)});
    }
    add(std::move(disk));
    add({.name = "complete-radio", .n = 8});
    return grid;
}

} // namespace hyperwalk
