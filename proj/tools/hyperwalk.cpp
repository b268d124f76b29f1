#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperwalk/bounds.hpp"
#include "hyperwalk/checks.hpp"
#include "hyperwalk/error.hpp"
#include "hyperwalk/families.hpp"
#include "hyperwalk/hitting.hpp"
#include "hyperwalk/io.hpp"
#include "hyperwalk/operators.hpp"
#include "hyperwalk/simulate.hpp"

namespace fs = std::filesystem;
using namespace hyperwalk;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitViolated = 4;

struct Output {
    std::string path;
    std::string format = "json";
};

struct FamilyOptions {
    FamilySpec spec;
    std::string points_path;
    bool line = false;

    FamilySpec resolve() const
    {
        FamilySpec out = spec;
        out.ring = !line;
        if (!points_path.empty()) out.points = parse_points_csv(read_text_file(points_path));
        return out;
    }
};

void add_family_options(CLI::App* cmd, FamilyOptions& f)
{
    cmd->add_option("--n", f.spec.n, "Vertex count (n' for clique-line)");
    cmd->add_option("--n-prime", f.spec.n, "Clique size of clique-line");
    cmd->add_option("--k", f.spec.k, "Edge size, hop radius or subset size");
    cmd->add_option("--m", f.spec.m, "Edge count (random-uniform)");
    cmd->add_option("--c", f.spec.c, "Clique edge size (clique-line)");
    cmd->add_option("--side", f.spec.side, "Torus side (mesh2d)");
    cmd->add_flag("--line", f.line, "Clipped line instead of a ring (radio-line)");
    cmd->add_option("--radius", f.spec.radius, "Connection radius (unit-disk)");
    cmd->add_option("--points", f.points_path, "CSV of x,y points with a header (unit-disk)");
    cmd->add_option("--p", f.spec.p, "Extra-edge probability (random-graph)");
    cmd->add_option("--family-seed", f.spec.seed, "Generator seed (random families)");
}

void emit(const Output& out, const std::string& text)
{
    if (out.path.empty() || out.path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(out.path, std::ios::binary);
    if (!file) throw ValidationError("cannot write " + out.path);
    file << text;
}

Json metadata(const std::string& command)
{
    Json j;
    j["tool"] = "hyperwalk";
    j["version"] = kVersion;
    j["command"] = command;
    return j;
}

AnyHypergraph load_input(const std::string& path)
{
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return parse_hypergraph(buf.str());
    }
    return load_hypergraph(path);
}

std::size_t vertex_count(const AnyHypergraph& h)
{
    return std::visit([](const auto& x) { return x.num_vertices(); }, h);
}

Json instance_json(const AnyHypergraph& h)
{
    return std::visit([](const auto& x) { return to_json(x); }, h);
}

void write_csv_file(const fs::path& path, const Eigen::MatrixXd& m)
{
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot write " + path.string());
    write_matrix_csv(file, m);
}

// gen ----------------------------------------------------------------------

struct GenArgs {
    std::string family;
    FamilyOptions family_options;
    Output out;
};

int run_gen(const GenArgs& a)
{
    FamilySpec spec = a.family_options.resolve();
    spec.name = a.family;
    emit(a.out, instance_json(spec.generate()).dump(2) + "\n");
    return 0;
}

// analyze ------------------------------------------------------------------

struct AnalyzeArgs {
    std::string input;
    std::optional<std::size_t> from;
    std::vector<std::size_t> to;
    std::string matrix_dir;
    Output out;
};

int run_analyze(const AnalyzeArgs& a)
{
    const AnyHypergraph h = load_input(a.input);
    const ExactAnalyzer exact = std::visit([](const auto& x) { return ExactAnalyzer(x); }, h);
    Json doc;
    doc["metadata"] = metadata("analyze");
    doc["metadata"]["input"] = a.input;
    doc["metadata"]["format"] = a.out.format;

    if (a.from) {
        if (a.to.empty()) throw ValidationError("--from needs --to");
        const RadioHitting radio = exact.radio_hitting(*a.from, a.to);
        const double hit = exact.hitting(*a.from, a.to);
        if (a.out.format == "csv") {
            emit(a.out, "source,targets,hitting,radio,radio_raw\n" + std::to_string(*a.from) + ",\"" +
                            Json(a.to).dump() + "\"," + format_double(hit) + ',' + format_double(radio.value) + ',' +
                            format_double(radio.raw) + '\n');
            return 0;
        }
        Json q;
        q["source"] = *a.from;
        q["targets"] = radio.targets;
        q["hitting"] = number_or_inf(hit);
        q["radio_hitting"] = number_or_inf(radio.value);
        q["radio_hitting_raw"] = number_or_inf(radio.raw);
        q["target_edges"] = radio.target_edges;
        doc["query"] = std::move(q);
        emit(a.out, doc.dump(2) + "\n");
        return 0;
    }

    Eigen::MatrixXd raw;
    const Eigen::MatrixXd hit = exact.hitting_matrix();
    const Eigen::MatrixXd radio = exact.radio_hitting_matrix(&raw);
    const Extremum h_max = argmax_pair(hit);
    const Extremum r_max = argmax_pair(radio);
    const Extremum raw_max = argmax_pair(raw);

    if (!a.matrix_dir.empty()) {
        fs::create_directories(a.matrix_dir);
        write_csv_file(fs::path(a.matrix_dir) / "vertex_chain.csv", exact.vertex_chain());
        write_csv_file(fs::path(a.matrix_dir) / "edge_chain.csv", exact.edge_chain());
        write_csv_file(fs::path(a.matrix_dir) / "hitting.csv", hit);
        write_csv_file(fs::path(a.matrix_dir) / "radio_hitting.csv", radio);
        write_csv_file(fs::path(a.matrix_dir) / "radio_hitting_raw.csv", raw);
    }

    const std::size_t n = exact.num_vertices();
    if (a.out.format == "csv") {
        std::ostringstream csv;
        csv << "source,target,hitting,radio,radio_raw\n";
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t u = 0; u < n; ++u) {
                const auto i = static_cast<Eigen::Index>(v);
                const auto j = static_cast<Eigen::Index>(u);
                csv << v << ',' << u << ',' << format_double(hit(i, j)) << ',' << format_double(radio(i, j)) << ','
                    << format_double(raw(i, j)) << '\n';
            }
        }
        emit(a.out, csv.str());
        return 0;
    }

    auto extremum = [](const Extremum& e) {
        return Json{{"value", number_or_inf(e.value)}, {"source", e.source}, {"target", e.target}};
    };
    auto table = [n](const Eigen::MatrixXd& m) {
        Json rows = Json::array();
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
            Json row = Json::array();
            for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j) row.push_back(number_or_inf(m(i, j)));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    Json summary;
    summary["n"] = n;
    summary["m"] = exact.num_edges();
    summary["hitting_max"] = extremum(h_max);
    summary["radio_hitting_max"] = extremum(r_max);
    summary["radio_hitting_raw_max"] = extremum(raw_max);
    summary["hitting_speedup"] = number_or_inf(h_max.value / r_max.value);
    summary["hitting_speedup_raw"] = number_or_inf(raw_max.value > 0 ? h_max.value / raw_max.value : kUnreachable);
    doc["summary"] = std::move(summary);
    doc["hitting"] = table(hit);
    doc["radio_hitting"] = table(radio);
    doc["radio_hitting_raw"] = table(raw);
    emit(a.out, doc.dump(2) + "\n");
    return 0;
}

// simulate -----------------------------------------------------------------

struct SimulateArgs {
    std::string input;
    std::string quantity = "both";
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::uint64_t cap = 0;
    std::string start = "all";
    unsigned threads = 0;
    std::string trials_csv;
    Output out;
};

SimConfig sim_config(std::size_t trials, std::uint64_t seed, std::uint64_t cap, const std::string& start,
                     unsigned threads, std::size_t n)
{
    SimConfig c;
    c.trials = trials;
    c.seed = seed;
    c.cap = cap;
    c.threads = threads;
    if (start == "all" || start == "stationary") {
        c.policy = parse_start_policy(start);
    } else {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(start.data(), start.data() + start.size(), v);
        if (ec != std::errc() || ptr != start.data() + start.size()) {
            throw ValidationError("--start expects all, stationary or a vertex index, got '" + start + "'");
        }
        if (v >= n) throw ValidationError("--start vertex " + start + " out of range");
        c.policy = StartPolicy::fixed;
        c.start = v;
    }
    return c;
}

Json sim_metadata(const std::string& command, const SimConfig& c)
{
    Json j = metadata(command);
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["cap"] = c.cap == 0 ? Json("default") : Json(c.cap);
    j["start_policy"] = to_string(c.policy);
    if (c.policy == StartPolicy::fixed) j["start"] = c.start;
    return j;
}

int run_simulate(const SimulateArgs& a)
{
    if (a.quantity != "cover" && a.quantity != "radio-cover" && a.quantity != "both") {
        throw ValidationError("--quantity expects cover, radio-cover or both");
    }
    const AnyHypergraph h = load_input(a.input);
    const WalkModel model = std::visit([](const auto& x) { return WalkModel(x); }, h);
    const SimConfig config = sim_config(a.trials, a.seed, a.cap, a.start, a.threads, model.num_vertices());

    std::vector<SimReport> reports;
    if (a.quantity != "radio-cover") reports.push_back(estimate_cover(model, config));
    if (a.quantity != "cover") reports.push_back(estimate_radio_cover(model, config));

    if (!a.trials_csv.empty()) {
        std::ofstream file(a.trials_csv, std::ios::binary);
        if (!file) throw ValidationError("cannot write " + a.trials_csv);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            std::ostringstream part;
            write_trials_csv(part, reports[i]);
            std::string text = part.str();
            if (i > 0) text = text.substr(text.find('\n') + 1);
            if (reports.size() > 1) {
                // Prefix each row with the quantity so both runs share one file.
                std::istringstream lines(text);
                std::string line;
                bool header = i == 0;
                while (std::getline(lines, line)) {
                    file << (header ? std::string("quantity") : reports[i].quantity) << ',' << line << '\n';
                    header = false;
                }
            } else {
                file << text;
            }
        }
    }

    if (a.out.format == "csv") {
        std::ostringstream csv;
        csv << "quantity,trials,mean,variance,ci,capped,valid\n";
        for (const auto& r : reports) {
            const std::size_t capped = r.estimate.capped;
            csv << r.quantity << ',' << r.trials << ',' << format_double(r.estimate.mean) << ','
                << format_double(r.estimate.variance) << ',' << format_double(r.estimate.ci) << ',' << capped << ','
                << (r.valid ? "true" : "false") << '\n';
        }
        emit(a.out, csv.str());
        return 0;
    }
    Json doc;
    doc["metadata"] = sim_metadata("simulate", config);
    doc["metadata"]["input"] = a.input;
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    doc["reports"] = std::move(list);
    emit(a.out, doc.dump(2) + "\n");
    return 0;
}

// bounds -------------------------------------------------------------------

struct BoundsArgs {
    std::string input;
    std::string family;
    FamilyOptions family_options;
    bool grid = false;
    std::vector<std::string> checks;
    std::size_t trials = 500;
    std::uint64_t seed = 0;
    std::uint64_t cap = 0;
    std::string start = "all";
    unsigned threads = 0;
    std::vector<std::size_t> line1d;
    bool line1d_hyperline = false;
    std::size_t mesh_side = 0;
    std::vector<std::size_t> ks{1, 2, 3};
    std::string trend_csv;
    bool lower = false;
    std::vector<std::size_t> cs{2, 3};
    std::vector<std::size_t> n_primes{4, 6, 8};
    Output out;
};

std::string table_text(const std::vector<std::pair<std::string, BoundReport>>& rows)
{
    std::ostringstream t;
    char line[256];
    std::snprintf(line, sizeof line, "%-40s %-15s %14s %14s %12s  %s\n", "instance", "check", "bound", "measured", "ci",
                  "verdict");
    t << line;
    for (const auto& [instance, r] : rows) {
        std::snprintf(line, sizeof line, "%-40s %-15s %14.6g %14.6g %12.4g  %s%s\n", instance.substr(0, 40).c_str(),
                      r.name.c_str(), r.bound, r.measured, r.ci, to_string(r.verdict).c_str(),
                      r.informational ? " (informational)" : "");
        t << line;
    }
    return t.str();
}

int run_bounds(const BoundsArgs& a)
{
    const int sources = (a.input.empty() ? 0 : 1) + (a.family.empty() ? 0 : 1) + (a.grid ? 1 : 0);
    const bool extras = !a.line1d.empty() || a.mesh_side > 0 || a.lower;
    if (sources > 1) throw ValidationError("give at most one of an input file, --family or --grid");
    if (sources == 0 && !extras) throw ValidationError("nothing to check: give an input, --family, --grid or a trend");
    if (!a.line1d.empty() && a.line1d.size() != 2) throw ValidationError("--line1d expects n,k");

    BoundConfig config;
    config.checks = a.checks;
    config.sim = sim_config(a.trials, a.seed, a.cap, a.start, a.threads, std::numeric_limits<std::size_t>::max());
    for (const auto& name : a.checks) {
        const auto& known = bound_check_names();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw ValidationError("unknown bound check '" + name + "'");
        }
    }

    std::vector<std::pair<std::string, AnyHypergraph>> instances;
    if (!a.input.empty()) instances.emplace_back(a.input, load_input(a.input));
    if (!a.family.empty()) {
        FamilySpec spec = a.family_options.resolve();
        spec.name = a.family;
        instances.emplace_back(spec.to_json().dump(), spec.generate());
    }
    if (a.grid) {
        for (const auto& spec : default_bound_grid()) instances.emplace_back(spec.to_json().dump(), spec.generate());
    }

    Json doc;
    doc["metadata"] = sim_metadata("bounds", config.sim);
    doc["metadata"]["checks"] = a.checks.empty() ? Json(bound_check_names()) : Json(a.checks);
    std::vector<std::pair<std::string, BoundReport>> rows;
    bool violated = false;
    Json results = Json::array();
    for (const auto& [name, h] : instances) {
        if (config.sim.policy == StartPolicy::fixed && config.sim.start >= vertex_count(h)) {
            throw ValidationError("--start vertex out of range for " + name);
        }
        const auto reports = check_bounds(h, config);
        violated = violated || any_violated(reports);
        Json entry;
        entry["instance"] = name;
        Json list = Json::array();
        for (const auto& r : reports) {
            list.push_back(to_json(r));
            rows.emplace_back(name, r);
        }
        entry["reports"] = std::move(list);
        results.push_back(std::move(entry));
    }
    doc["instances"] = std::move(results);

    if (!a.line1d.empty()) {
        SimConfig sim = config.sim;
        if (sim.policy == StartPolicy::all) {
            sim.policy = StartPolicy::fixed; // the ring is vertex-transitive
            sim.start = 0;
        }
        const BoundReport ring = line1d_check(a.line1d[0], a.line1d[1], false, sim);
        Json line1d = Json::array();
        line1d.push_back(to_json(ring));
        rows.emplace_back("radio-line ring", ring);
        violated = violated || any_violated({ring});
        if (a.line1d_hyperline) {
            const BoundReport hl = line1d_check(a.line1d[0], a.line1d[1], true, sim);
            line1d.push_back(to_json(hl));
            rows.emplace_back("hyperline", hl);
        }
        doc["line1d"] = std::move(line1d);
        doc["line1d_moments"] = to_json(line1d_step_moments(a.line1d[1]));
    }
    if (a.mesh_side > 0) {
        const MeshTrendReport trend = mesh2d_trend(a.mesh_side, a.ks, a.trials, a.seed);
        doc["mesh2d_trend"] = to_json(trend);
        if (!a.trend_csv.empty()) {
            std::ofstream file(a.trend_csv, std::ios::binary);
            if (!file) throw ValidationError("cannot write " + a.trend_csv);
            write_trend_csv(file, trend);
        }
    }
    if (a.lower) doc["lower_trend"] = to_json(lower_trend(a.cs, a.n_primes, a.trials, a.seed));

    doc["violated"] = violated;
    if (a.out.format == "csv") {
        std::ostringstream csv;
        csv << "instance,check,bound,measured,ci,verdict,informational\n";
        for (const auto& [instance, r] : rows) {
            csv << '"' << Json(instance).dump().substr(1, Json(instance).dump().size() - 2) << "\"," << r.name << ','
                << format_double(r.bound) << ',' << format_double(r.measured) << ',' << format_double(r.ci) << ','
                << to_string(r.verdict) << ',' << (r.informational ? "true" : "false") << '\n';
        }
        emit(a.out, csv.str());
    } else {
        emit(a.out, doc.dump(2) + "\n");
    }
    if (!rows.empty()) std::cerr << table_text(rows);
    return violated ? kExitViolated : 0;
}

// check --------------------------------------------------------------------

struct CheckArgs {
    std::string input;
    std::uint64_t seed = 0;
    std::size_t trials = 200;
    Output out;
};

int run_check(const CheckArgs& a)
{
    Json doc;
    doc["metadata"] = metadata("check");
    CheckSuite suite;
    if (!a.input.empty()) {
        doc["metadata"]["input"] = a.input;
        suite = check_instance(load_input(a.input));
    } else {
        doc["metadata"]["seed"] = a.seed;
        doc["metadata"]["trials"] = a.trials;
        suite = run_invariant_suite(a.seed, a.trials);
    }
    doc["suite"] = to_json(suite);
    emit(a.out, doc.dump(2) + "\n");
    for (const auto& r : suite.results) {
        if (!r.passed) std::cerr << "FAILED " << r.name << " value=" << format_double(r.value) << "\n";
    }
    return suite.passed() ? 0 : 1;
}

void add_output(CLI::App* cmd, Output& out, bool csv)
{
    cmd->add_option("-o,--output", out.path, "Output file (default stdout)");
    if (csv) cmd->add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Random walks and radio broadcast on hyper-graphs"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a hyper-graph family instance as JSON");
    gen_cmd->add_option("family", gen.family, "Family name")->required()->check(CLI::IsMember(family_names()));
    add_family_options(gen_cmd, gen.family_options);
    add_output(gen_cmd, gen.out, false);

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Exact hitting and radio hitting times");
    analyze_cmd->add_option("input", analyze.input, "Hyper-graph JSON (- for stdin)")->required();
    analyze_cmd->add_option("--from", analyze.from, "Start vertex of a single query");
    analyze_cmd->add_option("--to", analyze.to, "Target set of a single query")->delimiter(',');
    analyze_cmd->add_option("--matrix-csv", analyze.matrix_dir, "Directory for chain and hitting matrices as CSV");
    add_output(analyze_cmd, analyze.out, true);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo cover and radio cover times");
    sim_cmd->add_option("input", sim.input, "Hyper-graph JSON (- for stdin)")->required();
    sim_cmd->add_option("--quantity", sim.quantity, "cover, radio-cover or both")->capture_default_str();
    sim_cmd->add_option("--trials", sim.trials, "Trials per start")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
    sim_cmd->add_option("--cap", sim.cap, "Step cap per trial (0: 50 * 2mnr)")->capture_default_str();
    sim_cmd->add_option("--start", sim.start, "all, stationary or a vertex index")->capture_default_str();
    sim_cmd->add_option("--threads", sim.threads, "Worker threads (0: all cores)");
    sim_cmd->add_option("--trials-csv", sim.trials_csv, "Write per-trial values to this CSV");
    add_output(sim_cmd, sim.out, true);

    BoundsArgs bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "Compare closed-form bounds with exact and simulated values");
    bounds_cmd->add_option("input", bounds.input, "Hyper-graph JSON (- for stdin)");
    bounds_cmd->add_option("--family", bounds.family, "Generate the instance instead of reading it")
        ->check(CLI::IsMember(family_names()));
    add_family_options(bounds_cmd, bounds.family_options);
    bounds_cmd->add_flag("--grid", bounds.grid, "Run the default family grid");
    bounds_cmd->add_option("--check", bounds.checks, "Checks to run (default all)")->delimiter(',');
    bounds_cmd->add_option("--trials", bounds.trials, "Monte Carlo trials per start")->capture_default_str();
    bounds_cmd->add_option("--seed", bounds.seed, "Base seed")->capture_default_str();
    bounds_cmd->add_option("--cap", bounds.cap, "Step cap per trial (0: 50 * 2mnr)");
    bounds_cmd->add_option("--start", bounds.start, "all, stationary or a vertex index")->capture_default_str();
    bounds_cmd->add_option("--threads", bounds.threads, "Worker threads (0: all cores)");
    bounds_cmd->add_option("--line1d", bounds.line1d, "n,k: radio cover of the k-hop ring against n^2/(k^2/3+k/2+1/6)")
        ->delimiter(',');
    bounds_cmd->add_flag("--line1d-hyperline", bounds.line1d_hyperline, "Also report the hyperline model");
    bounds_cmd->add_option("--mesh-trend", bounds.mesh_side, "Torus side for the mesh2d radio hitting trend");
    bounds_cmd->add_option("--ks", bounds.ks, "Hop radii for --mesh-trend")->delimiter(',');
    bounds_cmd->add_option("--trend-csv", bounds.trend_csv, "Write the mesh2d trend series as CSV");
    bounds_cmd->add_flag("--lower-trend", bounds.lower, "Radio hitting growth on clique-line instances");
    bounds_cmd->add_option("--cs", bounds.cs, "Clique edge sizes for --lower-trend")->delimiter(',');
    bounds_cmd->add_option("--n-primes", bounds.n_primes, "Clique sizes for --lower-trend")->delimiter(',');
    add_output(bounds_cmd, bounds.out, true);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Run the invariant suite (or check one input)");
    check_cmd->add_option("input", check.input, "Hyper-graph JSON to check instead of the built-in suite");
    check_cmd->add_option("--seed", check.seed, "Base seed")->capture_default_str();
    check_cmd->add_option("--trials", check.trials, "Monte Carlo trials")->capture_default_str();
    add_output(check_cmd, check.out, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*analyze_cmd) return run_analyze(analyze);
        if (*sim_cmd) return run_simulate(sim);
        if (*bounds_cmd) return run_bounds(bounds);
        if (*check_cmd) return run_check(check);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
