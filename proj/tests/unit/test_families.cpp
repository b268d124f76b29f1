#include <doctest.h>

#include "hyperwalk/error.hpp"
#include "hyperwalk/families.hpp"
#include "hyperwalk/graph.hpp"
#include "hyperwalk/operators.hpp"
#include "hyperwalk/resistance.hpp"

using namespace hyperwalk;

TEST_SUITE("families") {

TEST_CASE("hyperline")
{
    const auto p3 = hyperline(3, 2);
    CHECK(p3.edges() == std::vector<VertexSet>{{0, 1}, {1, 2}});
    CHECK(hyperline(5, 3).edges() == std::vector<VertexSet>{{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
    CHECK(hyperline(4, 4).edges() == std::vector<VertexSet>{{0, 1, 2, 3}});
    CHECK(is_connected(hyperline(30, 7)));
    CHECK_THROWS_AS(hyperline(3, 1), ValidationError);
    CHECK_THROWS_AS(hyperline(3, 4), ValidationError);
}

TEST_CASE("radio line")
{
    const auto c5 = radio_line(5, 1, true);
    CHECK(c5.num_arcs() == 5);
    CHECK(c5.receivers(0) == VertexSet{1, 4});
    const auto ring = radio_line(8, 2, true);
    for (std::size_t a = 0; a < 8; ++a) CHECK(ring.receivers(a).size() == 4);
    const auto line = radio_line(6, 2, false);
    CHECK(line.receivers(0) == VertexSet{1, 2});
    CHECK(line.receivers(5) == VertexSet{3, 4});
    CHECK(line.receivers(2).size() == 4);
    CHECK_THROWS_AS(radio_line(4, 2, true), ValidationError);
    CHECK_THROWS_AS(radio_line(4, 0, true), ValidationError);
}

TEST_CASE("mesh2d")
{
    const auto small = mesh2d(3, 1);
    for (std::size_t a = 0; a < 9; ++a) CHECK(small.receivers(a).size() == 4);
    const auto mesh = mesh2d(5, 2);
    for (std::size_t a = 0; a < 25; ++a) {
        CHECK(mesh.origin(a) == a);
        CHECK(mesh.receivers(a).size() == 12);
    }
    const auto g = walk_graph(mesh);
    for (Vertex v = 0; v < 25; ++v) CHECK(g.degree(v) == 12);
    // Translation invariance: every resistance row is the same multiset.
    const ResistanceTable r(g);
    std::vector<double> first(r.matrix().row(0).data(), r.matrix().row(0).data() + 25);
    for (Eigen::Index v = 0; v < 25; ++v) {
        Eigen::VectorXd row = r.matrix().row(v).transpose();
        std::vector<double> sorted(row.data(), row.data() + 25);
        std::sort(sorted.begin(), sorted.end());
        std::sort(first.begin(), first.end());
        for (std::size_t i = 0; i < 25; ++i) CHECK(sorted[i] == doctest::Approx(first[i]).epsilon(1e-10));
    }
    CHECK_THROWS_AS(mesh2d(2, 1), ValidationError);
    CHECK_THROWS_AS(mesh2d(5, 3), ValidationError);
    CHECK_THROWS_AS(mesh2d(4, 2), ValidationError);
}

TEST_CASE("single edge")
{
    CHECK(single_edge(1).num_edges() == 1);
    CHECK(single_edge(4).edge(0) == VertexSet{0, 1, 2, 3});
    CHECK(single_edge(50).rank() == 50);
    CHECK_THROWS_AS(single_edge(0), ValidationError);
}

TEST_CASE("clique line")
{
    const auto small = clique_line(3, 2);
    CHECK(small.num_edges() == 5);
    CHECK(small.num_vertices() == 5);
    CHECK(clique_line(8, 3).num_edges() == 63);
    CHECK(clique_line(8, 3).num_vertices() == 15);
    CHECK(is_connected(clique_line(4, 2)));
    CHECK(clique_line_far_end(4) == 6);
    CHECK(binomial(8, 3) == 56);
    CHECK_THROWS_AS(clique_line(40, 20), ValidationError);
    CHECK_THROWS_AS(clique_line(4, 1), ValidationError);
    CHECK_THROWS_AS(clique_line(4, 5), ValidationError);
}

TEST_CASE("unit disk")
{
    const std::vector<Point> collinear{{0, 0}, {1, 0}, {2, 0}};
    const auto path = unit_disk(collinear, 1.0);
    CHECK(path.receivers(0) == VertexSet{1});
    CHECK(path.receivers(1) == VertexSet{0, 2});

    const std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto cycle = unit_disk(square, 1.0);
    CHECK(cycle.receivers(0) == VertexSet{1, 3});
    CHECK(cycle.receivers(2) == VertexSet{1, 3});

    const std::vector<Point> far{{0, 0}, {3, 0}};
    CHECK_THROWS_AS(unit_disk(far, 1.0), InfeasibleError);
    const std::vector<Point> lonely{{0, 0}};
    CHECK_THROWS_AS(unit_disk(lonely, 1.0), ValidationError);
}

TEST_CASE("random uniform hyper-graphs")
{
    const auto h = random_uniform(8, 6, 3, 1);
    CHECK(is_connected(h));
    CHECK(h.rank() == 3);
    CHECK(h.num_edges() == 6);
    for (const auto& e : h.edges()) CHECK(e.size() == 3);
    CHECK(random_uniform(8, 6, 3, 1).edges() == h.edges());
    CHECK(random_uniform(5, 1, 5, 0).edges() == single_edge(5).edges());
    CHECK_THROWS_AS(random_uniform(4, 3, 5, 0), ValidationError);
    CHECK_THROWS_AS(random_uniform(10, 1, 2, 0), InfeasibleError);
}

TEST_CASE("random connected graphs")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = random_connected_graph(15, 0.1, seed);
        CHECK(g.is_connected());
    }
}

TEST_CASE("family specs")
{
    for (const auto& name : family_names()) CHECK_FALSE(name.empty());
    FamilySpec spec;
    spec.name = "hyperline";
    spec.n = 5;
    spec.k = 3;
    CHECK(std::get<Hypergraph>(spec.generate()).edges() == hyperline(5, 3).edges());
    spec.name = "mesh2d";
    spec.side = 5;
    spec.k = 1;
    CHECK(std::get<DirectedHypergraph>(spec.generate()).num_arcs() == 25);
    spec.name = "nope";
    CHECK_THROWS_AS(spec.generate(), ValidationError);
}

TEST_CASE("small graph families")
{
    CHECK(complete_graph(5).num_edges() == 10);
    CHECK(cycle_graph(6).num_edges() == 6);
    CHECK(path_graph(6).num_edges() == 5);
}

} // TEST_SUITE
