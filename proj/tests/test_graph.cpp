#include <doctest.h>

#include <sstream>

#include "graphheat/graph.hpp"
#include "oracles.hpp"

using namespace graphheat;

TEST_SUITE("graph") {

TEST_CASE("adjacency matrix on the smallest graphs") {
    const SimpleGraph p2(2, {{0, 1}});
    const Eigen::MatrixXd a2 = adjacency_matrix(p2);
    CHECK(a2(0, 0) == 0.0);
    CHECK(a2(0, 1) == 1.0);
    CHECK(a2(1, 0) == 1.0);
    CHECK(a2(1, 1) == 0.0);

    const SimpleGraph empty3(3, {});
    CHECK(adjacency_matrix(empty3).isZero(0.0));

    const SimpleGraph k3(3, {{0, 1}, {0, 2}, {1, 2}});
    const Eigen::MatrixXd a3 = adjacency_matrix(k3);
    CHECK(a3 == Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3));
}

TEST_CASE("degree vectors") {
    const SimpleGraph p3(3, {{0, 1}, {1, 2}});
    const Eigen::VectorXi d = degree_vector(p3);
    CHECK(d(0) == 1);
    CHECK(d(1) == 2);
    CHECK(d(2) == 1);

    CHECK(degree_vector(SimpleGraph(3, {{0, 1}, {0, 2}, {1, 2}})) == Eigen::VectorXi::Constant(3, 2));
    CHECK(degree_vector(SimpleGraph(4, {})) == Eigen::VectorXi::Zero(4));

    // degree equals the adjacency row sum
    const SimpleGraph g(5, {{0, 1}, {0, 4}, {2, 3}, {1, 4}});
    const Eigen::MatrixXd a = adjacency_matrix(g);
    for (int i = 0; i < 5; ++i) {
        CHECK(degree_vector(g)(i) == static_cast<int>(a.row(i).sum()));
    }
}

TEST_CASE("laplacian entries match D - A") {
    const LaplacianMatrix l2 = laplacian(SimpleGraph(2, {{0, 1}}));
    Eigen::MatrixXd expect2(2, 2);
    expect2 << 1, -1, -1, 1;
    CHECK(l2.dense() == expect2);

    const LaplacianMatrix lk3 = laplacian(SimpleGraph(3, {{0, 1}, {0, 2}, {1, 2}}));
    Eigen::MatrixXd expect3(3, 3);
    expect3 << 2, -1, -1, -1, 2, -1, -1, -1, 2;
    CHECK(lk3.dense() == expect3);

    const LaplacianMatrix lp3 = laplacian(SimpleGraph(3, {{0, 1}, {1, 2}}));
    Eigen::MatrixXd expectp3(3, 3);
    expectp3 << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK(lp3.dense() == expectp3);
}

TEST_CASE("laplacian structural invariants on assorted graphs") {
    const SimpleGraph graphs[] = {
        SimpleGraph(2, {{0, 1}}),
        SimpleGraph(3, {{0, 1}, {1, 2}}),
        SimpleGraph(4, {}),
        grid_graph({3, 5}),
        SimpleGraph(6, oracles::erdos_renyi_edges(6, 0.5, 42)),
    };
    for (const auto& g : graphs) {
        const LaplacianMatrix l = laplacian(g);
        const Eigen::MatrixXd d = l.dense();
        CHECK(d.isApprox(d.transpose(), 0.0)); // exactly symmetric
        for (int i = 0; i < g.vertex_count(); ++i) {
            CHECK(d.row(i).sum() == 0.0);
            int minus_ones = 0;
            for (int j = 0; j < g.vertex_count(); ++j) {
                if (i == j) continue;
                CHECK((d(i, j) == 0.0 || d(i, j) == -1.0));
                if (d(i, j) == -1.0) ++minus_ones;
            }
            CHECK(d(i, i) == static_cast<double>(minus_ones));
        }
        CHECK(l.trace() == 2 * g.edge_count());
    }
}

TEST_CASE("grid graphs against brute-force lattice enumeration") {
    // 1x2 is the path P2
    const SimpleGraph p = grid_graph({1, 2});
    CHECK(p.vertex_count() == 2);
    CHECK(p.edges() == std::vector<SimpleGraph::Edge>{{0, 1}});

    // 2x2 is the 4-cycle
    const SimpleGraph c4 = grid_graph({2, 2});
    CHECK(c4.vertex_count() == 4);
    CHECK(c4.edge_count() == 4);

    for (int r = 1; r <= 10; ++r) {
        for (int c = 1; c <= 10; ++c) {
            const SimpleGraph g = grid_graph({r, c});
            CHECK(g.vertex_count() == r * c);
            CHECK(g.edges() == oracles::brute_force_grid_edges(r, c));
            CHECK(g.edge_count() == static_cast<std::int64_t>(r) * (c - 1) + static_cast<std::int64_t>(c) * (r - 1));
        }
    }
}

TEST_CASE("full-resolution grid size") {
    const SimpleGraph g = grid_graph({128, 128});
    CHECK(g.vertex_count() == 16384);
    CHECK(g.edge_count() == 2 * 128 * 127); // 32512
    CHECK(g.edge_count() ==
          static_cast<std::int64_t>(oracles::brute_force_grid_edges(128, 128).size()));
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(SimpleGraph(3, {{1, 1}}), RangeError);        // self-loop
    CHECK_THROWS_AS(SimpleGraph(3, {{0, 1}, {1, 0}}), RangeError); // duplicate after normalization
    CHECK_THROWS_AS(SimpleGraph(3, {{0, 3}}), RangeError);        // out of range
    CHECK_THROWS_AS(SimpleGraph(0, {}), RangeError);
    CHECK_THROWS_AS(grid_graph({0, 4}), RangeError);
    CHECK_THROWS_AS(grid_graph({65536, 65536}), SizeError);

    // normalization: order and orientation of input edges is irrelevant
    const SimpleGraph a(4, {{2, 0}, {3, 1}});
    const SimpleGraph b(4, {{1, 3}, {0, 2}});
    CHECK(a.edges() == b.edges());
    CHECK(a.has_edge(0, 2));
    CHECK(a.has_edge(2, 0));
    CHECK_FALSE(a.has_edge(0, 1));
}

TEST_CASE("isolated vertices are permitted and visible") {
    const SimpleGraph g(4, {{0, 1}});
    CHECK(g.isolated_count() == 2);
    const LaplacianMatrix l = laplacian(g);
    CHECK(l.dense().row(3).isZero(0.0));
    CHECK(grid_graph({1, 1}).isolated_count() == 1);
    CHECK(grid_graph({3, 3}).isolated_count() == 0);
}

TEST_CASE("edge-list round trip") {
    const SimpleGraph g = grid_graph({3, 4});
    std::stringstream ss;
    write_edge_list(g, ss);

    // exact format: "n m" header, then "i j" with i < j, LF endings
    std::string first_line;
    std::getline(ss, first_line);
    CHECK(first_line == "12 17");
    ss.seekg(0);

    const SimpleGraph back = read_edge_list(ss);
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());

    std::stringstream bad("3");
    CHECK_THROWS_AS(read_edge_list(bad), IoError);
    std::stringstream short_list("3 2\n0 1\n");
    CHECK_THROWS_AS(read_edge_list(short_list), IoError);
}

} // TEST_SUITE
