#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "graphheat/errors.hpp"

namespace graphheat {

/// Shape of a pixel lattice. Vertex (r, c) maps to index r*cols + c.
struct GridSpec {
    int rows = 0;
    int cols = 0;
};

/// Undirected simple graph: no self-loops, no duplicate edges, indices in
/// [0, n). Edges are normalized to (i, j) with i < j and kept sorted so
/// iteration order, and everything assembled from it, is reproducible.
class SimpleGraph {
public:
    using Edge = std::pair<int, int>;

    /// Validates and normalizes the edge set; throws RangeError on
    /// self-loops, duplicates, or out-of-range indices.
    SimpleGraph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Binary search over the sorted edge list.
    bool has_edge(int i, int j) const;

    Eigen::VectorXi degrees() const;

    /// Degree-zero vertices are legal but usually indicate a mistake;
    /// callers may want to warn when this is nonzero.
    int isolated_count() const;

private:
    int n_;
    std::vector<Edge> edges_; // sorted, i < j
};

/// 4-neighbor (von Neumann) lattice on rows x cols pixels, row-major
/// vertex order. Throws SizeError when rows*cols exceeds the index range.
SimpleGraph grid_graph(const GridSpec& spec);

/// Dense 0/1 adjacency matrix. Intended for small graphs and tests.
Eigen::MatrixXd adjacency_matrix(const SimpleGraph& g);

/// Row sums of the adjacency matrix.
Eigen::VectorXi degree_vector(const SimpleGraph& g);

/// Combinatorial Laplacian L = D - A, stored sparsely. Symmetric, rows sum
/// to zero, off-diagonals in {0, -1}, diagonal holds vertex degrees.
class LaplacianMatrix {
public:
    explicit LaplacianMatrix(const SimpleGraph& g);

    int size() const { return n_; }
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    Eigen::MatrixXd dense() const;
    int max_degree() const { return max_degree_; }
    /// trace(L) = sum of degrees = 2|E|, computed in integer arithmetic.
    std::int64_t trace() const { return degree_sum_; }

private:
    int n_;
    int max_degree_;
    std::int64_t degree_sum_;
    Eigen::SparseMatrix<double> mat_;
};

LaplacianMatrix laplacian(const SimpleGraph& g);

/// Plain-text edge list: first line "n m", then m lines "i j" with i < j,
/// LF line endings. Debug/test interchange format.
void write_edge_list(const SimpleGraph& g, std::ostream& out);
SimpleGraph read_edge_list(std::istream& in);

} // namespace graphheat
