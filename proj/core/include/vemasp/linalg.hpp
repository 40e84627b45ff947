#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <utility>

namespace vemasp {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// A square linear map known only through its action.
class LinearOperator {
 public:
  using ApplyFn = std::function<void(const Vector&, Vector&)>;

  LinearOperator(Index size, ApplyFn fn) : size_(size), fn_(std::move(fn)) {}

  /// Non-owning view of a sparse matrix; `m` must outlive the operator.
  static LinearOperator from_matrix(const SparseMatrix& m) {
    const SparseMatrix* p = &m;
    return {m.rows(), [p](const Vector& x, Vector& y) { y.noalias() = *p * x; }};
  }

  Index size() const { return size_; }

  void apply(const Vector& x, Vector& y) const { fn_(x, y); }
  Vector operator()(const Vector& x) const {
    Vector y(size_);
    fn_(x, y);
    return y;
  }

 private:
  Index size_;
  ApplyFn fn_;
};

/// Numerical rank of a dense matrix via column-pivoted QR.
Index dense_rank(const DenseMatrix& m, double rel_threshold = 1e-10);

/// Largest |a_ij - a_ji|.
double symmetry_defect(const SparseMatrix& m);

SparseMatrix diagonal_matrix(const Vector& d);

}  // namespace vemasp
