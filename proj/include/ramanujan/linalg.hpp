#pragma once

// Symmetric eigensolvers: Householder tridiagonalization with implicit QL
// for dense matrices, and Lanczos with full reorthogonalization for
// operators given as a matrix-vector product.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ramanujan {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double* row(std::size_t i) { return data_.data() + i * n_; }
  const double* row(std::size_t i) const { return data_.data() + i * n_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // row i is the unit eigenvector of values[i]
};

/// Eigenvalues (ascending) of a symmetric matrix.
std::vector<double> symmetric_eigenvalues(DenseMatrix a);

/// Eigenvalues and orthonormal eigenvectors of a symmetric matrix.
EigenSystem symmetric_eigensystem(DenseMatrix a);

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` (off[i] couples i and i+1). If `vectors`
/// is non-null it receives the eigenvectors as rows.
std::vector<double> tridiagonal_eigen(std::vector<double> diag, std::vector<double> off,
                                      DenseMatrix* vectors);

using LinearOperator = std::function<void(const std::vector<double>& in, std::vector<double>& out)>;

struct LanczosResult {
  double smallest = 0;
  double largest = 0;
  double residual_smallest = 0;
  double residual_largest = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Extreme eigenvalues of a symmetric operator on R^n restricted to the
/// orthogonal complement of `deflate` (orthonormal vectors).
LanczosResult lanczos_extremes(const LinearOperator& op, std::size_t n,
                               const std::vector<std::vector<double>>& deflate,
                               double tol = 1e-10, std::size_t max_iter = 2000,
                               std::uint64_t seed = 1);

}  // namespace ramanujan
