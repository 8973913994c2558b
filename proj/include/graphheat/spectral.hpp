#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "graphheat/graph.hpp"

namespace graphheat {

/// A real value per vertex (pixel intensities live here, but the type is an
/// unconstrained vector-space element).
using GraphSignal = Eigen::VectorXd;

/// Spectral coefficients of a signal in an EigenBasis, one per mode, in the
/// basis's ascending-eigenvalue order.
using SpectralCoefficients = Eigen::VectorXd;

/// Orthonormal eigenbasis of a graph Laplacian with eigenvalues sorted
/// ascending. Two backends share the interface:
///
///  - dense_solve: explicit eigenvector matrix from a symmetric solver,
///    for arbitrary graphs up to a capacity cap.
///  - grid_analytic: closed-form separable cosine modes of a rows x cols
///    lattice. Eigenvalues are 4 sin^2(a pi / (2 rows)) +
///    4 sin^2(b pi / (2 cols)); eigenvectors are products of per-axis
///    modes with normalization c_0 = sqrt(1/m), c_a = sqrt(2/m). Analysis
///    and synthesis run as separable transforms, O(n (rows + cols)), which
///    is what makes 128x128 and larger tractable.
///
/// Degenerate eigenvalues are ordered deterministically: the grid path
/// breaks ties by lexicographic (a, b) mode index, the dense path keeps the
/// solver's ascending order.
class EigenBasis {
public:
    enum class Source { dense_solve, grid_analytic };

    int size() const { return n_; }
    Source source() const { return source_; }

    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    double eigenvalue(int k) const;
    double lambda_max() const { return n_ > 0 ? eigenvalues_[n_ - 1] : 0.0; }

    /// Materializes eigenvector k (column k of the implicit basis matrix).
    Eigen::VectorXd eigenvector(int k) const;

    /// Coefficients <signal, phi_i> for all n modes.
    SpectralCoefficients analyze(const GraphSignal& signal) const;

    /// Coefficients for the k lowest modes only. Cost scales with the
    /// retained band, not with n, on both backends.
    SpectralCoefficients analyze_leading(const GraphSignal& signal, int k) const;

    /// Sum of coeffs[i] * phi_i. Accepts any length <= n; missing trailing
    /// modes contribute zero.
    GraphSignal synthesize(const SpectralCoefficients& coeffs) const;

    /// Mode index pairs (a, b) in eigenvalue order; grid backend only.
    const std::vector<std::pair<int, int>>& grid_mode_order() const;

    friend EigenBasis eigendecompose_dense(const LaplacianMatrix& L, int dense_cap);
    friend EigenBasis eigendecompose_grid(const GridSpec& spec);

private:
    EigenBasis() = default;

    int n_ = 0;
    Source source_ = Source::dense_solve;
    Eigen::VectorXd eigenvalues_;

    // dense backend
    Eigen::MatrixXd vectors_; // column k <-> eigenvalue k

    // grid backend
    int rows_ = 0, cols_ = 0;
    Eigen::MatrixXd row_modes_; // rows x rows, column a = axis mode a
    Eigen::MatrixXd col_modes_; // cols x cols
    std::vector<std::pair<int, int>> mode_order_;
};

/// Full symmetric eigendecomposition of L. Guarded by dense_cap (O(n^3)
/// work): larger problems get a CapacityError pointing at the grid path.
/// Negative round-off eigenvalues within tolerance are clamped to zero;
/// anything worse is a ConvergenceError.
EigenBasis eigendecompose_dense(const LaplacianMatrix& L, int dense_cap = 4096);

/// Closed-form basis of the 4-neighbor lattice Laplacian.
EigenBasis eigendecompose_grid(const GridSpec& spec);

} // namespace graphheat
