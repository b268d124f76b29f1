#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "hyperwalk/bounds.hpp"
#include "hyperwalk/error.hpp"
#include "hyperwalk/families.hpp"
#include "hyperwalk/hitting.hpp"
#include "hyperwalk/simulate.hpp"

using namespace hyperwalk;

namespace {

SimConfig fixed(Vertex start, std::size_t trials, std::uint64_t seed)
{
    SimConfig c;
    c.policy = StartPolicy::fixed;
    c.start = start;
    c.trials = trials;
    c.seed = seed;
    return c;
}

bool within(const Estimate& e, double exact, double sigmas = 3.0)
{
    return std::abs(e.mean - exact) <= sigmas * e.standard_error();
}

} // namespace

TEST_SUITE("simulate") {

TEST_CASE("trajectories respect the walk")
{
    const WalkModel single(single_edge(4));
    const auto t = simulate_walk(single, 2, 10, 5);
    REQUIRE(t.steps.size() == 10);
    for (const auto& s : t.steps) CHECK(s.edge == 0);

    const WalkModel p3(hyperline(3, 2));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto walk = simulate_walk(p3, 0, 5, seed);
        CHECK(walk.steps.front().edge == 0);
        Vertex at = 0;
        for (const auto& s : walk.steps) {
            const auto& choices = p3.choices(at);
            CHECK(std::find(choices.begin(), choices.end(), s.edge) != choices.end());
            const auto& land = p3.landing(s.edge);
            CHECK(std::find(land.begin(), land.end(), s.vertex) != land.end());
            at = s.vertex;
        }
    }

    const WalkModel radio(mesh2d(5, 1));
    Vertex at = 7;
    for (const auto& s : simulate_walk(radio, 7, 200, 3).steps) {
        CHECK(radio.heard_by(s.edge).front() <= radio.num_vertices());
        const auto& choices = radio.choices(at);
        CHECK(std::find(choices.begin(), choices.end(), s.edge) != choices.end());
        at = s.vertex;
    }

    const auto a = simulate_walk(p3, 1, 50, 9), b = simulate_walk(p3, 1, 50, 9);
    for (std::size_t i = 0; i < 50; ++i) CHECK(a.steps[i].vertex == b.steps[i].vertex);
    CHECK(simulate_walk(p3, 1, 0, 9).steps.empty());
}

TEST_CASE("occupancy converges to the stationary law")
{
    const auto occ = occupancy(WalkModel(hyperline(3, 2)), 0, 100000, 1);
    CHECK(std::abs(occ[0] - 0.25) < 0.01);
    CHECK(std::abs(occ[1] - 0.50) < 0.01);
    CHECK(std::abs(occ[2] - 0.25) < 0.01);
}

TEST_CASE("summary statistics")
{
    const std::vector<double> xs{1, 2, 3, 4};
    const auto e = summarize(xs, 1);
    CHECK(e.trials == 4);
    CHECK(e.capped == 1);
    CHECK(e.mean == doctest::Approx(2.5));
    CHECK(e.variance == doctest::Approx(5.0 / 3));
    CHECK(e.ci == doctest::Approx(1.96 * std::sqrt(5.0 / 12)));
    CHECK(pairwise_sum(std::vector<double>(1000, 0.1)) == doctest::Approx(100).epsilon(1e-14));
    CHECK(parse_start_policy("stationary") == StartPolicy::stationary);
    CHECK_THROWS_AS(parse_start_policy("sometimes"), ValidationError);
}

TEST_CASE("single edge cover")
{
    const WalkModel m(single_edge(4));
    const auto cover = estimate_cover(m, fixed(0, 4000, 1));
    CHECK(within(cover.estimate, 22.0 / 3));
    const auto radio = estimate_radio_cover(m, fixed(0, 500, 1));
    CHECK(radio.estimate.mean == 1.0);
    CHECK(radio.estimate.variance == 0.0);
}

TEST_CASE("P3 cover and radio cover from an end")
{
    const WalkModel m(hyperline(3, 2));
    CHECK(within(estimate_cover(m, fixed(0, 4000, 2)).estimate, 8));
    CHECK(within(estimate_radio_cover(m, fixed(0, 4000, 2)).estimate, 5));
}

TEST_CASE("one vertex covers in zero steps")
{
    const WalkModel m(Hypergraph(1, {{0}}));
    CHECK(estimate_cover(m, fixed(0, 10, 0)).estimate.mean == 0.0);
    CHECK(estimate_radio_cover(m, fixed(0, 10, 0)).estimate.mean == 0.0);
}

TEST_CASE("torus radio cover dominates the largest radio hitting time")
{
    const auto torus = mesh2d(5, 1);
    const double h_max = ExactAnalyzer(torus).max_radio_hitting().value;
    SimConfig c;
    c.trials = 300;
    c.seed = 4;
    const auto r = estimate_radio_cover(WalkModel(torus), c);
    CHECK(r.estimate.mean + 3 * r.estimate.standard_error() >= h_max);
}

TEST_CASE("capped trials are counted and flag the report")
{
    SimConfig c = fixed(0, 200, 3);
    c.cap = 3;
    const auto r = estimate_cover(WalkModel(hyperline(10, 2)), c);
    CHECK(r.estimate.capped > 2);
    CHECK_FALSE(r.valid);
    CHECK(r.estimate.trials + r.estimate.capped == 200);
    CHECK(default_step_cap(WalkModel(hyperline(3, 2))) == 50 * 2 * 2 * 3 * 2);
}

TEST_CASE("start policies")
{
    const WalkModel m(hyperline(5, 3));
    SimConfig all;
    all.trials = 200;
    const auto r = estimate_cover(m, all);
    CHECK(r.per_start.size() == 5);
    REQUIRE(r.confirmation.has_value());
    CHECK(r.confirmation->start == r.argmax_start);

    SimConfig st = all;
    st.policy = StartPolicy::stationary;
    const auto s = estimate_cover(m, st);
    CHECK(s.estimate.trials == 200);
    CHECK_FALSE(s.confirmation.has_value());
}

TEST_CASE("disconnected walks are rejected")
{
    CHECK_THROWS_AS(estimate_cover(WalkModel(Hypergraph(4, {{0, 1}, {2, 3}})), fixed(0, 10, 0)), InfeasibleError);
    const RadioHypergraph oneway(DirectedHypergraph(3, {{{0}, {1}}, {{1}, {2}}, {{2}, {1}}}));
    CHECK_THROWS_AS(estimate_radio_cover(WalkModel(oneway), fixed(0, 10, 0)), InfeasibleError);
}

TEST_CASE("reports do not depend on the worker count")
{
    const WalkModel m(hyperline(8, 3));
    SimConfig c;
    c.trials = 300;
    c.seed = 12;
    std::string first;
    for (unsigned threads : {1u, 3u, 8u}) {
        c.threads = threads;
        const std::string json = to_json(estimate_radio_cover(m, c)).dump();
        if (first.empty()) first = json;
        CHECK(json == first);
    }
    c.seed = 13;
    CHECK(to_json(estimate_radio_cover(m, c)).dump() != first);
}

TEST_CASE("trial streams are independent of each other")
{
    auto a = trial_rng(1, 1, 0, 0), b = trial_rng(1, 1, 0, 1), c = trial_rng(1, 1, 0, 0);
    const auto x = a();
    CHECK(x != b());
    CHECK(x == c());
}

TEST_CASE("first passage estimates")
{
    const WalkModel m(hyperline(3, 2));
    PassageConfig c;
    c.trials = 4000;
    c.seed = 8;
    const std::vector<Vertex> targets{1, 2};
    const auto visit = estimate_first_passage(m, 0, targets, Passage::visit, c);
    REQUIRE(visit.size() == 2);
    CHECK(within(visit[0], 2));
    CHECK(within(visit[1], 8));
    const auto heard = estimate_first_passage(m, 0, targets, Passage::heard, c);
    CHECK(heard[0].mean == 1.0);
    CHECK(within(heard[1], 5));
}

TEST_CASE("speedups")
{
    SimConfig c;
    c.trials = 300;
    const auto p3 = estimate_speedups(hyperline(3, 2), c);
    CHECK(p3.hitting_speedup == doctest::Approx(1.6));
    CHECK(p3.hitting_speedup_raw == doctest::Approx(2.0));

    c.trials = 2000;
    const auto single = estimate_speedups(single_edge(4), c);
    CHECK(single.radio_cover.estimate.mean == 1.0);
    CHECK(std::abs(single.cover_speedup - 22.0 / 3) <= 3 * single.cover.estimate.standard_error());
    CHECK(single.cover_speedup <= speedup_bound(4));
}

TEST_CASE("trials csv")
{
    SimConfig c = fixed(1, 3, 0);
    std::ostringstream out;
    write_trials_csv(out, estimate_cover(WalkModel(hyperline(3, 2)), c));
    const std::string text = out.str();
    CHECK(text.rfind("stage,start,trial,value,capped\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

} // TEST_SUITE
