#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperwalk/error.hpp"
#include "hyperwalk/families.hpp"
#include "hyperwalk/graph.hpp"
#include "hyperwalk/hitting.hpp"
#include "hyperwalk/operators.hpp"
#include "helpers.hpp"

using namespace hyperwalk;

namespace {

oracle::StepModel step_model(const WalkModel& m)
{
    oracle::StepModel out;
    for (Vertex v = 0; v < m.num_vertices(); ++v) out.choices.push_back(m.choices(v));
    for (std::size_t e = 0; e < m.num_edges(); ++e) {
        out.landing.push_back(m.landing(e));
        out.heard.push_back(m.heard_by(e));
    }
    return out;
}

} // namespace

TEST_SUITE("hitting") {

TEST_CASE("P3 hitting times")
{
    const ExactAnalyzer p3(hyperline(3, 2));
    const VertexSet c{2};
    const auto h = p3.hitting(c);
    CHECK(h.values[0] == doctest::Approx(8).epsilon(1e-12));
    CHECK(h.values[1] == doctest::Approx(6).epsilon(1e-12));
    CHECK(h.values[2] == 0.0);
    CHECK(h.residual <= 1e-9);
}

TEST_CASE("P3 radio hitting times")
{
    const ExactAnalyzer p3(hyperline(3, 2));
    const VertexSet c{2}, b{1}, a{0};
    const auto to_c = p3.radio_hitting(0, c);
    CHECK(to_c.value == doctest::Approx(5).epsilon(1e-12));
    CHECK(to_c.raw == doctest::Approx(4).epsilon(1e-12));
    CHECK(to_c.target_edges == std::vector<std::size_t>{1});

    const auto to_b = p3.radio_hitting(0, b);
    CHECK(to_b.value == doctest::Approx(1));
    CHECK(to_b.raw == doctest::Approx(0));

    CHECK(p3.radio_hitting(1, c).value == doctest::Approx(3));
    CHECK(p3.radio_hitting(1, c).raw == doctest::Approx(2));
    CHECK(p3.radio_hitting(0, a).value == 0.0);
}

TEST_CASE("whole state space as target")
{
    const auto ops = build_operators(hyperline(5, 3));
    const std::vector<std::size_t> all{0, 1, 2, 3, 4};
    const auto h = hitting_times(ops.vertex_chain, all);
    for (double x : h.values) CHECK(x == 0.0);
}

TEST_CASE("unreachable states get infinity")
{
    Eigen::MatrixXd m(4, 4);
    m << 0.5, 0.5, 0, 0, 0.5, 0.5, 0, 0, 0, 0, 0.5, 0.5, 0, 0, 0.5, 0.5;
    const std::vector<std::size_t> target{0};
    const auto h = hitting_times(m, target);
    CHECK(h.values[1] == doctest::Approx(2));
    CHECK(std::isinf(h.values[2]));
    CHECK(std::isinf(h.values[3]));
    CHECK_FALSE(h.finite[2]);

    // A state that reaches the target only with probability 1/2 is also infinite.
    Eigen::MatrixXd leak(3, 3);
    leak << 1, 0, 0, 0.5, 0, 0.5, 0, 0, 1;
    const std::vector<std::size_t> zero{0};
    CHECK(std::isinf(hitting_times(leak, zero).values[1]));

    // Radio hitting from a sink component.
    const RadioHypergraph r(DirectedHypergraph(3, {{{0}, {1}}, {{1}, {2}}, {{2}, {1}}}));
    const VertexSet to_zero{0};
    CHECK(std::isinf(ExactAnalyzer(r).radio_hitting(2, to_zero).value));
}

TEST_CASE("bad target sets")
{
    const auto ops = build_operators(hyperline(3, 2));
    CHECK_THROWS_AS(hitting_times(ops.vertex_chain, std::vector<std::size_t>{}), ValidationError);
    CHECK_THROWS_AS(hitting_times(ops.vertex_chain, std::vector<std::size_t>{3}), ValidationError);
    const ExactAnalyzer p3(hyperline(3, 2));
    CHECK_THROWS_AS(p3.radio_hitting(0, VertexSet{}), ValidationError);
}

TEST_CASE("radio lifts of small graphs")
{
    const VertexSet two{2}, one{1};
    CHECK(radio_hitting_directed(radio_from_graph(path_graph(3)), 0, two).value == doctest::Approx(2));
    CHECK(radio_hitting_directed(radio_from_graph(complete_graph(3)), 0, one).value == doctest::Approx(1));
}

TEST_CASE("torus radio hitting never exceeds hitting")
{
    const auto torus = mesh2d(3, 1);
    const ExactAnalyzer a(torus);
    const Eigen::MatrixXd h = a.hitting_matrix();
    const Eigen::MatrixXd radio = a.radio_hitting_matrix();
    CHECK((radio.array() <= h.array() + 1e-9).all());
    CHECK(radio.maxCoeff() > 0);
}

TEST_CASE("maxima and tie breaking")
{
    const auto p3 = max_hitting(hyperline(3, 2));
    CHECK(p3.value == doctest::Approx(8));
    CHECK(p3.source == 0);
    CHECK(p3.target == 2);
    const auto r3 = max_radio_hitting(hyperline(3, 2));
    CHECK(r3.value == doctest::Approx(5));
    CHECK(r3.source == 0);
    CHECK(r3.target == 2);

    CHECK(max_radio_hitting(single_edge(6)).value == doctest::Approx(1));
    CHECK(max_hitting(to_hypergraph(complete_graph(3))).value == doctest::Approx(4));

    const auto line = max_hitting(hyperline(5, 3));
    CHECK(line.value == doctest::Approx(15));
    CHECK(line.source == 0);
    CHECK(line.target == 4);
    const auto rline = max_radio_hitting(hyperline(5, 3));
    CHECK(rline.value == doctest::Approx(7));
    CHECK(rline.source == 0);
    CHECK(rline.target == 4);

    Eigen::MatrixXd tie(2, 2);
    tie << 0, 3, 3, 0;
    CHECK(argmax_pair(tie).source == 0);
    CHECK(argmax_pair(tie).target == 1);
}

TEST_CASE("clique line radio hitting")
{
    const ExactAnalyzer a(clique_line(4, 2));
    const VertexSet far{clique_line_far_end(4)}, inner{1};
    CHECK(a.radio_hitting(1, far).value == doctest::Approx(79).epsilon(1e-10));
    CHECK(a.radio_hitting(clique_line_far_end(4), inner).value == doctest::Approx(123.0 / 5).epsilon(1e-10));
}

TEST_CASE("entry distribution")
{
    const auto ops = build_operators(hyperline(3, 2));
    const std::vector<std::size_t> ends{0, 2};
    const Eigen::MatrixXd p = entry_distribution(ops.vertex_chain, ends);
    CHECK(p(1, 0) == doctest::Approx(0.5));
    CHECK(p(1, 1) == doctest::Approx(0.5));
    CHECK(p(0, 0) == 1.0);
    CHECK(p(2, 1) == 1.0);
}

TEST_CASE("hitting agrees with the oracle on random hyper-graphs")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = 2 + rng() % 12;
        const Hypergraph h(n, oracle::random_hypergraph(n, rng() % 5, 4, rng));
        const ExactAnalyzer a(h);
        const auto model = step_model(WalkModel(h));
        const Vertex t = rng() % n;
        const VertexSet target{t};

        const auto ops = build_operators(h);
        const auto expected = oracle::hitting(to_oracle(ops.vertex_chain), {t});
        const auto radio_expected = oracle::radio_hitting(model, {t});
        const auto got = a.hitting(target);
        std::vector<double> raw;
        const auto radio = a.radio_hitting_all(target, &raw);
        for (Vertex v = 0; v < n; ++v) {
            CHECK(got.values[v] == doctest::Approx(static_cast<double>(expected[v])).epsilon(1e-9));
            CHECK(radio[v] == doctest::Approx(static_cast<double>(radio_expected[v])).epsilon(1e-9));
            if (v != t) CHECK(radio[v] == doctest::Approx(1 + raw[v]).epsilon(1e-12));
            CHECK(radio[v] <= got.values[v] + 1e-9);
        }
    }
}

TEST_CASE("radio hitting agrees with the oracle on radio lifts")
{
    std::mt19937_64 rng(29);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 2 + rng() % 15;
        const auto r = radio_from_graph(random_connected_graph(n, 0.25, rng()));
        const ExactAnalyzer a(r);
        const Vertex t = rng() % n;
        const auto expected = oracle::radio_hitting(step_model(WalkModel(r)), {t});
        const auto got = a.radio_hitting_all(VertexSet{t});
        for (Vertex v = 0; v < n; ++v) {
            CHECK(got[v] == doctest::Approx(static_cast<double>(expected[v])).epsilon(1e-9));
        }
    }
}

TEST_CASE("enlarging the target set never increases hitting times")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 3 + rng() % 10;
        const Hypergraph h(n, oracle::random_hypergraph(n, rng() % 4, 4, rng));
        const ExactAnalyzer a(h);
        const Vertex x = rng() % n;
        const Vertex y = (x + 1 + rng() % (n - 1)) % n;
        const VertexSet small{x};
        VertexSet big{x, y};
        std::sort(big.begin(), big.end());
        const auto hs = a.hitting(small), hb = a.hitting(big);
        const auto rs = a.radio_hitting_all(small), rb = a.radio_hitting_all(big);
        for (Vertex v = 0; v < n; ++v) {
            CHECK(hb.values[v] <= hs.values[v] + 1e-9);
            CHECK(rb[v] <= rs[v] + 1e-9);
        }
    }
}

TEST_CASE("fixed-point residual on families")
{
    for (const Hypergraph& h : {hyperline(20, 5), single_edge(9), clique_line(5, 3), random_uniform(12, 8, 3, 1)}) {
        const ExactAnalyzer a(h);
        for (Vertex t = 0; t < h.num_vertices(); ++t) {
            const VertexSet target{t};
            const auto r = a.hitting(target);
            CHECK(r.residual <= 1e-9);
            CHECK(r.values[t] == 0.0);
            CHECK(a.radio_hitting(t, target).value == 0.0);
        }
    }
}

} // TEST_SUITE
