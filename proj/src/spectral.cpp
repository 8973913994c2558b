#include "graphheat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

namespace graphheat {

namespace {

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

void check_signal(const Eigen::VectorXd& s, int n, const char* where) {
    if (s.size() != n) {
        throw DimensionError(std::string(where) + ": signal length " + std::to_string(s.size()) +
                             " != basis dimension " + std::to_string(n));
    }
    if (!s.allFinite()) {
        throw RangeError(std::string(where) + ": signal has non-finite entries");
    }
}

/// Orthonormal cosine modes of the length-m path Laplacian: column a is
/// c_a cos(a pi (r + 1/2) / m), c_0 = sqrt(1/m), c_a = sqrt(2/m).
Eigen::MatrixXd path_cosine_modes(int m) {
    Eigen::MatrixXd v(m, m);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (int a = 0; a < m; ++a) {
        const double scale = std::sqrt((a == 0 ? 1.0 : 2.0) * inv_m);
        for (int r = 0; r < m; ++r) {
            v(r, a) = scale * std::cos(a * std::numbers::pi * (r + 0.5) * inv_m);
        }
    }
    return v;
}

double path_eigenvalue(int a, int m) {
    const double s = std::sin(a * std::numbers::pi / (2.0 * m));
    return 4.0 * s * s;
}

} // namespace

double EigenBasis::eigenvalue(int k) const {
    if (k < 0 || k >= n_) {
        throw DimensionError("EigenBasis::eigenvalue: index " + std::to_string(k) + " outside [0," +
                             std::to_string(n_) + ")");
    }
    return eigenvalues_[k];
}

Eigen::VectorXd EigenBasis::eigenvector(int k) const {
    if (k < 0 || k >= n_) {
        throw DimensionError("EigenBasis::eigenvector: index " + std::to_string(k) + " outside [0," +
                             std::to_string(n_) + ")");
    }
    if (source_ == Source::dense_solve) {
        return vectors_.col(k);
    }
    const auto [a, b] = mode_order_[static_cast<std::size_t>(k)];
    Eigen::VectorXd phi(n_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            phi[r * cols_ + c] = row_modes_(r, a) * col_modes_(c, b);
        }
    }
    return phi;
}

SpectralCoefficients EigenBasis::analyze(const GraphSignal& signal) const {
    return analyze_leading(signal, n_);
}

SpectralCoefficients EigenBasis::analyze_leading(const GraphSignal& signal, int k) const {
    check_signal(signal, n_, "analyze");
    if (k < 0 || k > n_) {
        throw DimensionError("analyze_leading: mode count " + std::to_string(k) + " outside [0," +
                             std::to_string(n_) + "]");
    }
    if (k == 0) return Eigen::VectorXd();

    if (source_ == Source::dense_solve) {
        return vectors_.leftCols(k).transpose() * signal;
    }

    // The k lowest modes form a staircase in (a, b): per-axis eigenvalues
    // increase strictly with the mode index, so the prefix is downward
    // closed. Transforming its bounding rectangle keeps everything in two
    // small matrix products.
    int a_hi = 0, b_hi = 0;
    for (int idx = 0; idx < k; ++idx) {
        a_hi = std::max(a_hi, mode_order_[static_cast<std::size_t>(idx)].first + 1);
        b_hi = std::max(b_hi, mode_order_[static_cast<std::size_t>(idx)].second + 1);
    }
    RowMajorMap u(signal.data(), rows_, cols_);
    const Eigen::MatrixXd c_rect =
        row_modes_.leftCols(a_hi).transpose() * u * col_modes_.leftCols(b_hi);

    Eigen::VectorXd coeffs(k);
    for (int idx = 0; idx < k; ++idx) {
        const auto [a, b] = mode_order_[static_cast<std::size_t>(idx)];
        coeffs[idx] = c_rect(a, b);
    }
    return coeffs;
}

GraphSignal EigenBasis::synthesize(const SpectralCoefficients& coeffs) const {
    const int k = static_cast<int>(coeffs.size());
    if (k > n_) {
        throw DimensionError("synthesize: " + std::to_string(k) + " coefficients for dimension " +
                             std::to_string(n_));
    }
    if (!coeffs.allFinite()) {
        throw RangeError("synthesize: non-finite coefficients");
    }
    if (k == 0) return Eigen::VectorXd::Zero(n_);

    if (source_ == Source::dense_solve) {
        return vectors_.leftCols(k) * coeffs;
    }

    int a_hi = 0, b_hi = 0;
    for (int idx = 0; idx < k; ++idx) {
        a_hi = std::max(a_hi, mode_order_[static_cast<std::size_t>(idx)].first + 1);
        b_hi = std::max(b_hi, mode_order_[static_cast<std::size_t>(idx)].second + 1);
    }
    Eigen::MatrixXd c_rect = Eigen::MatrixXd::Zero(a_hi, b_hi);
    for (int idx = 0; idx < k; ++idx) {
        const auto [a, b] = mode_order_[static_cast<std::size_t>(idx)];
        c_rect(a, b) = coeffs[idx];
    }
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> u =
        row_modes_.leftCols(a_hi) * (c_rect * col_modes_.leftCols(b_hi).transpose());

    return Eigen::Map<const Eigen::VectorXd>(u.data(), n_);
}

const std::vector<std::pair<int, int>>& EigenBasis::grid_mode_order() const {
    if (source_ != Source::grid_analytic) {
        throw ConfigError("grid_mode_order: basis was not built on the grid-analytic path");
    }
    return mode_order_;
}

EigenBasis eigendecompose_dense(const LaplacianMatrix& L, int dense_cap) {
    const int n = L.size();
    if (n > dense_cap) {
        throw CapacityError("eigendecompose_dense: n=" + std::to_string(n) + " exceeds dense_cap=" +
                            std::to_string(dense_cap) +
                            "; use eigendecompose_grid for lattice graphs");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L.dense());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eigendecompose_dense: eigensolver did not converge within its "
                               "iteration budget");
    }

    EigenBasis basis;
    basis.n_ = n;
    basis.source_ = EigenBasis::Source::dense_solve;
    basis.eigenvalues_ = solver.eigenvalues(); // ascending
    basis.vectors_ = solver.eigenvectors();

    // Spectrum sanity: nonnegative up to round-off (clamped), and the
    // eigenvalue sum must match trace(L) = 2|E|.
    const double lam_max = basis.eigenvalues_[n - 1];
    const double tol_eig = 1e-9 * std::abs(lam_max);
    for (int i = 0; i < n; ++i) {
        double& lam = basis.eigenvalues_[i];
        if (lam < -tol_eig) {
            throw ConvergenceError("eigendecompose_dense: negative eigenvalue " +
                                   std::to_string(lam) + " beyond round-off tolerance");
        }
        if (lam < 0.0) lam = 0.0;
    }
    const auto two_e = static_cast<double>(L.trace());
    if (std::abs(basis.eigenvalues_.sum() - two_e) > 1e-6 * (two_e / 2.0) + 1e-12) {
        throw ConvergenceError("eigendecompose_dense: eigenvalue sum deviates from 2|E|");
    }
    return basis;
}

EigenBasis eigendecompose_grid(const GridSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1) {
        throw RangeError("eigendecompose_grid: rows and cols must be >= 1");
    }
    const std::int64_t n64 = static_cast<std::int64_t>(spec.rows) * spec.cols;
    if (n64 > std::numeric_limits<int>::max()) {
        throw SizeError("eigendecompose_grid: grid exceeds the vertex index range");
    }
    const int n = static_cast<int>(n64);

    EigenBasis basis;
    basis.n_ = n;
    basis.source_ = EigenBasis::Source::grid_analytic;
    basis.rows_ = spec.rows;
    basis.cols_ = spec.cols;
    basis.row_modes_ = path_cosine_modes(spec.rows);
    basis.col_modes_ = path_cosine_modes(spec.cols);

    Eigen::VectorXd lam_row(spec.rows), lam_col(spec.cols);
    for (int a = 0; a < spec.rows; ++a) lam_row[a] = path_eigenvalue(a, spec.rows);
    for (int b = 0; b < spec.cols; ++b) lam_col[b] = path_eigenvalue(b, spec.cols);

    basis.mode_order_.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < spec.rows; ++a) {
        for (int b = 0; b < spec.cols; ++b) {
            basis.mode_order_[static_cast<std::size_t>(a) * spec.cols + b] = {a, b};
        }
    }
    // Ascending eigenvalue; degenerate pairs ordered by (a, b).
    std::sort(basis.mode_order_.begin(), basis.mode_order_.end(),
              [&](const std::pair<int, int>& x, const std::pair<int, int>& y) {
                  const double lx = lam_row[x.first] + lam_col[x.second];
                  const double ly = lam_row[y.first] + lam_col[y.second];
                  if (lx != ly) return lx < ly;
                  return x < y;
              });

    basis.eigenvalues_.resize(n);
    for (int idx = 0; idx < n; ++idx) {
        const auto [a, b] = basis.mode_order_[static_cast<std::size_t>(idx)];
        basis.eigenvalues_[idx] = lam_row[a] + lam_col[b];
    }
    return basis;
}

} // namespace graphheat
