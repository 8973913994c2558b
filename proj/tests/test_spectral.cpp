#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "graphheat/spectral.hpp"
#include "oracles.hpp"

using namespace graphheat;

namespace {

Eigen::VectorXd random_signal(int n, std::uint64_t seed, double lo = 0.0, double hi = 255.0) {
    std::mt19937_64 rng(seed);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    }
    return v;
}

/// Compares eigenspace projectors cluster by cluster. Individual
/// eigenvectors are not comparable under degeneracy, the projections onto
/// shared eigenspaces are.
void check_projectors_match(const EigenBasis& lhs, const EigenBasis& rhs, double tol) {
    const int n = lhs.size();
    REQUIRE(rhs.size() == n);
    int start = 0;
    while (start < n) {
        int stop = start + 1;
        while (stop < n && lhs.eigenvalue(stop) - lhs.eigenvalue(stop - 1) < 1e-7) ++stop;
        Eigen::MatrixXd pl = Eigen::MatrixXd::Zero(n, n);
        Eigen::MatrixXd pr = Eigen::MatrixXd::Zero(n, n);
        for (int k = start; k < stop; ++k) {
            const Eigen::VectorXd a = lhs.eigenvector(k);
            const Eigen::VectorXd b = rhs.eigenvector(k);
            pl += a * a.transpose();
            pr += b * b.transpose();
        }
        CHECK((pl - pr).cwiseAbs().maxCoeff() <= tol);
        start = stop;
    }
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("dense eigenvalues of the textbook graphs") {
    const EigenBasis p2 = eigendecompose_dense(laplacian(SimpleGraph(2, {{0, 1}})));
    CHECK(p2.eigenvalue(0) == doctest::Approx(0.0).epsilon(0.0).scale(1e-12));
    CHECK(p2.eigenvalue(1) == doctest::Approx(2.0).epsilon(1e-12));

    // characteristic polynomial of the K3 Laplacian factors as x (x-3)^2
    const EigenBasis k3 = eigendecompose_dense(laplacian(SimpleGraph(3, {{0, 1}, {0, 2}, {1, 2}})));
    CHECK(std::abs(k3.eigenvalue(0)) <= 1e-12);
    CHECK(k3.eigenvalue(1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(k3.eigenvalue(2) == doctest::Approx(3.0).epsilon(1e-12));

    // the 2x2 grid is the 4-cycle
    const EigenBasis c4 = eigendecompose_dense(laplacian(grid_graph({2, 2})));
    const std::vector<double> expect = oracles::cycle_eigenvalues(4); // 0, 2, 2, 4
    for (int i = 0; i < 4; ++i) {
        CHECK(c4.eigenvalue(i) == doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
    CHECK(c4.eigenvalues().sum() == doctest::Approx(8.0)); // 2 * 4 edges
}

TEST_CASE("dense basis invariants") {
    const SimpleGraph g(12, oracles::erdos_renyi_edges(12, 0.4, 7));
    const LaplacianMatrix l = laplacian(g);
    const EigenBasis basis = eigendecompose_dense(l);

    // ascending, nonnegative, kernel present
    for (int i = 1; i < basis.size(); ++i) {
        CHECK(basis.eigenvalue(i) >= basis.eigenvalue(i - 1));
    }
    CHECK(basis.eigenvalue(0) >= 0.0);
    CHECK(basis.eigenvalue(0) <= 1e-9 * basis.lambda_max());

    // orthonormality
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(basis.size(), basis.size());
    for (int i = 0; i < basis.size(); ++i) {
        for (int j = 0; j < basis.size(); ++j) {
            gram(i, j) = basis.eigenvector(i).dot(basis.eigenvector(j));
        }
    }
    CHECK((gram - Eigen::MatrixXd::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff() <=
          1e-8);

    // eigenvalue sum against the handshake identity
    CHECK(std::abs(basis.eigenvalues().sum() - 2.0 * static_cast<double>(g.edge_count())) <=
          1e-6 * static_cast<double>(g.edge_count()));

    // L reconstructed from the spectral decomposition
    Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(basis.size(), basis.size());
    for (int k = 0; k < basis.size(); ++k) {
        const Eigen::VectorXd phi = basis.eigenvector(k);
        recon += basis.eigenvalue(k) * phi * phi.transpose();
    }
    const Eigen::MatrixXd dense = l.dense();
    CHECK((recon - dense).cwiseAbs().maxCoeff() <= 1e-8 * dense.cwiseAbs().maxCoeff());
}

TEST_CASE("dense solver capacity guard") {
    const LaplacianMatrix l = laplacian(grid_graph({3, 3}));
    CHECK_THROWS_AS(eigendecompose_dense(l, 8), CapacityError);
    CHECK_NOTHROW(eigendecompose_dense(l, 9));
}

TEST_CASE("grid path matches the dense solver on small lattices") {
    const EigenBasis tiny = eigendecompose_grid({1, 2});
    CHECK(tiny.eigenvalue(0) == doctest::Approx(0.0).epsilon(0.0).scale(1e-15));
    const double s = std::sin(std::numbers::pi / 4.0);
    CHECK(tiny.eigenvalue(1) == doctest::Approx(4.0 * s * s).epsilon(1e-14)); // = 2

    for (int r = 1; r <= 8; ++r) {
        for (int c = 1; c <= 8; ++c) {
            const EigenBasis grid = eigendecompose_grid({r, c});
            const EigenBasis dense = eigendecompose_dense(laplacian(grid_graph({r, c})));
            for (int i = 0; i < grid.size(); ++i) {
                CHECK(std::abs(grid.eigenvalue(i) - dense.eigenvalue(i)) <= 1e-8);
            }
            const auto edges = static_cast<double>(grid_graph({r, c}).edge_count());
            CHECK(std::abs(grid.eigenvalues().sum() - 2.0 * edges) <= 1e-6 * edges + 1e-12);
        }
    }

    // spec'd spot check: 4x4 agrees to 1e-10 as a multiset
    const EigenBasis g4 = eigendecompose_grid({4, 4});
    const EigenBasis d4 = eigendecompose_dense(laplacian(grid_graph({4, 4})));
    for (int i = 0; i < 16; ++i) {
        CHECK(std::abs(g4.eigenvalue(i) - d4.eigenvalue(i)) <= 1e-10);
    }
}

TEST_CASE("eigenspace projectors agree under degeneracy") {
    // square grids have systematically repeated eigenvalues
    for (const auto& [r, c] : {std::pair{4, 4}, {5, 5}, {3, 6}}) {
        check_projectors_match(eigendecompose_grid({r, c}),
                               eigendecompose_dense(laplacian(grid_graph({r, c}))), 1e-8);
    }
}

TEST_CASE("grid eigenvectors actually diagonalize the lattice Laplacian") {
    const LaplacianMatrix l = laplacian(grid_graph({5, 3}));
    const EigenBasis basis = eigendecompose_grid({5, 3});
    for (int k = 0; k < basis.size(); ++k) {
        const Eigen::VectorXd phi = basis.eigenvector(k);
        CHECK(phi.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((l.apply(phi) - basis.eigenvalue(k) * phi).norm() <= 1e-12 * (1.0 + basis.eigenvalue(k)));
    }
}

TEST_CASE("full-resolution spectrum endpoints") {
    const EigenBasis basis = eigendecompose_grid({128, 128});
    CHECK(basis.size() == 16384);
    CHECK(basis.eigenvalue(0) == 0.0);
    const double s = std::sin(127.0 * std::numbers::pi / 256.0);
    CHECK(basis.lambda_max() == doctest::Approx(8.0 * s * s).epsilon(1e-14));
    CHECK(basis.lambda_max() < 8.0); // Gershgorin bound of the 4-regular lattice
}

TEST_CASE("analyze picks out basis directions") {
    const EigenBasis basis = eigendecompose_grid({3, 4});
    const Eigen::VectorXd coeffs = basis.analyze(basis.eigenvector(3));
    for (int i = 0; i < basis.size(); ++i) {
        CHECK(std::abs(coeffs[i] - (i == 3 ? 1.0 : 0.0)) <= 1e-8);
    }

    CHECK(basis.analyze(Eigen::VectorXd::Zero(12)).isZero(0.0));

    // constant vector lives in the kernel mode alone: <1, phi_0> = sqrt(n)
    const EigenBasis p2 = eigendecompose_grid({1, 2});
    const Eigen::VectorXd c = p2.analyze(Eigen::VectorXd::Ones(2));
    CHECK(c[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(c[1]) <= 1e-14);
}

TEST_CASE("synthesize inverts analyze") {
    const EigenBasis basis = eigendecompose_grid({4, 4});

    // unit coefficient vectors map back to eigenvectors
    Eigen::VectorXd e = Eigen::VectorXd::Zero(16);
    e[5] = 1.0;
    CHECK((basis.synthesize(e) - basis.eigenvector(5)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(basis.synthesize(Eigen::VectorXd::Zero(16)).isZero(0.0));

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::VectorXd u = random_signal(16, 1000 + seed);
        const Eigen::VectorXd back = basis.synthesize(basis.analyze(u));
        CHECK((back - u).cwiseAbs().maxCoeff() <= 1e-10);
    }

    // round-trip and Parseval on both backends
    const EigenBasis dense = eigendecompose_dense(laplacian(SimpleGraph(9, oracles::erdos_renyi_edges(9, 0.5, 3))));
    for (const EigenBasis* basis_ptr : {&basis, &dense}) {
        const Eigen::VectorXd u = random_signal(basis_ptr->size(), 99);
        const Eigen::VectorXd c = basis_ptr->analyze(u);
        CHECK(std::abs(c.squaredNorm() - u.squaredNorm()) <= 1e-8 * u.squaredNorm());
        CHECK((basis_ptr->synthesize(c) - u).norm() <= 1e-10 * u.norm());
    }
}

TEST_CASE("leading-mode transforms agree with the full ones") {
    const EigenBasis grid = eigendecompose_grid({6, 5});
    const Eigen::VectorXd u = random_signal(30, 5);
    const Eigen::VectorXd full = grid.analyze(u);
    for (const int k : {0, 1, 7, 13, 29, 30}) {
        const Eigen::VectorXd head = grid.analyze_leading(u, k);
        REQUIRE(head.size() == k);
        for (int i = 0; i < k; ++i) {
            CHECK(head[i] == doctest::Approx(full[i]).epsilon(1e-13));
        }
        // truncated synthesis equals synthesis of the zero-padded vector
        Eigen::VectorXd padded = full;
        padded.tail(30 - k).setZero();
        CHECK((grid.synthesize(head) - grid.synthesize(padded)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("dimension mismatches are rejected") {
    const EigenBasis basis = eigendecompose_grid({2, 3});
    CHECK_THROWS_AS(basis.analyze(Eigen::VectorXd::Zero(5)), DimensionError);
    CHECK_THROWS_AS(basis.synthesize(Eigen::VectorXd::Zero(7)), DimensionError);
    CHECK_THROWS_AS(basis.analyze_leading(Eigen::VectorXd::Zero(6), 7), DimensionError);
    CHECK_THROWS_AS(basis.eigenvector(6), DimensionError);

    Eigen::VectorXd bad = Eigen::VectorXd::Zero(6);
    bad[2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(basis.analyze(bad), RangeError);
}

} // TEST_SUITE
