#include "graphheat/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace graphheat {

SimpleGraph::SimpleGraph(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ <= 0) {
        throw RangeError("SimpleGraph: vertex count must be positive, got " + std::to_string(n_));
    }
    for (auto& [i, j] : edges_) {
        if (i == j) {
            throw RangeError("SimpleGraph: self-loop at vertex " + std::to_string(i));
        }
        if (i < 0 || j < 0 || i >= n_ || j >= n_) {
            throw RangeError("SimpleGraph: edge {" + std::to_string(i) + "," + std::to_string(j) +
                             "} outside [0," + std::to_string(n_) + ")");
        }
        if (i > j) std::swap(i, j);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw RangeError("SimpleGraph: duplicate edge");
    }
}

bool SimpleGraph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
}

Eigen::VectorXi SimpleGraph::degrees() const {
    Eigen::VectorXi d = Eigen::VectorXi::Zero(n_);
    for (const auto& [i, j] : edges_) {
        ++d[i];
        ++d[j];
    }
    return d;
}

int SimpleGraph::isolated_count() const {
    const Eigen::VectorXi d = degrees();
    return static_cast<int>((d.array() == 0).count());
}

SimpleGraph grid_graph(const GridSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1) {
        throw RangeError("grid_graph: rows and cols must be >= 1");
    }
    const std::int64_t n64 = static_cast<std::int64_t>(spec.rows) * spec.cols;
    if (n64 > std::numeric_limits<int>::max()) {
        throw SizeError("grid_graph: " + std::to_string(spec.rows) + "x" + std::to_string(spec.cols) +
                        " exceeds the vertex index range");
    }
    const int cols = spec.cols;
    std::vector<SimpleGraph::Edge> edges;
    edges.reserve(static_cast<std::size_t>(spec.rows) * (cols - 1) +
                  static_cast<std::size_t>(cols) * (spec.rows - 1));
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int v = r * cols + c;
            if (c + 1 < cols) edges.emplace_back(v, v + 1);
            if (r + 1 < spec.rows) edges.emplace_back(v, v + cols);
        }
    }
    return SimpleGraph(static_cast<int>(n64), std::move(edges));
}

Eigen::MatrixXd adjacency_matrix(const SimpleGraph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [i, j] : g.edges()) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
    }
    return a;
}

Eigen::VectorXi degree_vector(const SimpleGraph& g) { return g.degrees(); }

LaplacianMatrix::LaplacianMatrix(const SimpleGraph& g)
    : n_(g.vertex_count()), mat_(g.vertex_count(), g.vertex_count()) {
    const Eigen::VectorXi deg = g.degrees();
    max_degree_ = deg.size() > 0 ? deg.maxCoeff() : 0;
    degree_sum_ = deg.cast<std::int64_t>().sum();

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(g.edges().size() * 2 + static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        if (deg[i] > 0) triplets.emplace_back(i, i, static_cast<double>(deg[i]));
    }
    for (const auto& [i, j] : g.edges()) {
        triplets.emplace_back(i, j, -1.0);
        triplets.emplace_back(j, i, -1.0);
    }
    mat_.setFromTriplets(triplets.begin(), triplets.end());
}

Eigen::VectorXd LaplacianMatrix::apply(const Eigen::VectorXd& v) const {
    if (v.size() != n_) {
        throw DimensionError("LaplacianMatrix::apply: vector length " + std::to_string(v.size()) +
                             " != " + std::to_string(n_));
    }
    return mat_ * v;
}

Eigen::MatrixXd LaplacianMatrix::dense() const { return Eigen::MatrixXd(mat_); }

LaplacianMatrix laplacian(const SimpleGraph& g) { return LaplacianMatrix(g); }

void write_edge_list(const SimpleGraph& g, std::ostream& out) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [i, j] : g.edges()) {
        out << i << ' ' << j << '\n';
    }
}

SimpleGraph read_edge_list(std::istream& in) {
    long long n = 0, m = 0;
    if (!(in >> n >> m) || n <= 0 || m < 0) {
        throw IoError("read_edge_list: malformed header (expected \"n m\")");
    }
    if (n > std::numeric_limits<int>::max()) {
        throw SizeError("read_edge_list: vertex count exceeds index range");
    }
    std::vector<SimpleGraph::Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long k = 0; k < m; ++k) {
        int i = 0, j = 0;
        if (!(in >> i >> j)) {
            throw IoError("read_edge_list: expected " + std::to_string(m) + " edges, got " +
                          std::to_string(k));
        }
        edges.emplace_back(i, j);
    }
    return SimpleGraph(static_cast<int>(n), std::move(edges));
}

} // namespace graphheat
