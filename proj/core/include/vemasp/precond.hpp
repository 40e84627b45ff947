#pragma once

// Smoothers and nodal auxiliary space preconditioners for the facet space.
//
//   B_add r = S^{-1} r + T A1^{-1} T^T r + C A2^{-1} C^T r
//
// with T the nodal-vector -> facet transfer, C the curl incidence and
// A1, A2 the nodal H1 matrices.

#include "vemasp/linalg.hpp"
#include "vemasp/mesh.hpp"
#include "vemasp/problems.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vemasp {

/// r -> z, square, known dimension.
class Preconditioner {
 public:
  Preconditioner(Index size, LinearOperator::ApplyFn fn, bool symmetric, std::string name,
                 std::optional<Vector> diagonal = std::nullopt)
      : op_(size, std::move(fn)), symmetric_(symmetric), name_(std::move(name)), diagonal_(std::move(diagonal)) {}

  static Preconditioner identity(Index size);
  /// z = r ./ d. Throws NonPositiveDiagonal unless every d_i > 0.
  static Preconditioner inverse_diagonal(const Vector& d, std::string name = "diag");

  Index size() const { return op_.size(); }
  bool symmetric() const { return symmetric_; }
  const std::string& name() const { return name_; }
  /// Set when the operator is diagonal; holds the entries of the operator
  /// itself (the inverse of the smoother diagonal).
  const std::optional<Vector>& diagonal() const { return diagonal_; }

  void apply(const Vector& r, Vector& z) const { op_.apply(r, z); }
  Vector operator()(const Vector& r) const { return op_(r); }
  const LinearOperator& op() const { return op_; }

 private:
  LinearOperator op_;
  bool symmetric_;
  std::string name_;
  std::optional<Vector> diagonal_;
};

enum class SmootherKind { diag, stab };

struct Smoother {
  SmootherKind kind = SmootherKind::diag;
  Vector d;  // the smoother is diag(d)
};

/// d = diag(A). Throws NonPositiveDiagonal.
Smoother smoother_diag(const SparseMatrix& a);
/// d_F = sum_{K containing F} diam(K)^{-1} / |F|.
Smoother smoother_stab(const PolygonalMesh& mesh);
Smoother make_smoother(SmootherKind kind, const SparseMatrix& a, const PolygonalMesh& mesh);

/// Auxiliary space pulled back through pi: contributes pi A_j^{-1} pi^T.
struct AuxiliarySpace {
  std::string name;
  SparseMatrix pi;
  std::function<Vector(const Vector&)> solve;  // A_j^{-1}
};

/// Sparse Cholesky solve of an SPD matrix. Throws FactorizationFailure.
std::function<Vector(const Vector&)> cholesky_solver(const SparseMatrix& a, const std::string& what);

/// The two nodal auxiliary spaces of the 2D facet preconditioner:
/// (T, A1^{-1}) and (C, A2^{-1}).
std::vector<AuxiliarySpace> nodal_auxiliary_spaces(const PolygonalMesh& mesh);

Preconditioner make_additive(const Smoother& s, std::vector<AuxiliarySpace> spaces);

/// Residual recursion of the multiplicative variant.
///   literal:  r_j = r_{j-1} - A z_{j-1}
///   residual: r_j = r_0 - A z_{j-1}  (the true residual of z_{j-1})
enum class MultiplicativeRecursion { literal, residual };

/// z_0 = S^{-1} r; for j = 1..J: r_j per `recursion`; z_j = z_{j-1} + pi_j A_j^{-1} pi_j^T r_j.
Preconditioner make_multiplicative(const SparseMatrix& a, const Smoother& s, std::vector<AuxiliarySpace> spaces,
                                   MultiplicativeRecursion recursion = MultiplicativeRecursion::literal);

Preconditioner build_additive(const SparseMatrix& a, const PolygonalMesh& mesh, SmootherKind kind = SmootherKind::diag);
Preconditioner build_multiplicative(const SparseMatrix& a, const PolygonalMesh& mesh,
                                    SmootherKind kind = SmootherKind::diag,
                                    MultiplicativeRecursion recursion = MultiplicativeRecursion::literal);

/// blockdiag(B_facet, M_p^{-1}) with M_p = diag(|K|).
Preconditioner build_darcy_block(const Preconditioner& b_facet, const PolygonalMesh& mesh);

/// projection: diag(A)^{-1}; darcy: blockdiag(diag(M_u)^{-1}, M_p^{-1}).
Preconditioner build_diag_reference(const AssembledSystem& system, const PolygonalMesh& mesh);

enum class PrecondKind { none, diag, add, mult };

std::string to_string(PrecondKind k);
std::string to_string(SmootherKind k);
/// Throws InvalidArgument on unknown names.
PrecondKind parse_precond_kind(const std::string& s);
SmootherKind parse_smoother_kind(const std::string& s);

/// The preconditioner of the given kind for a projection or Darcy system.
/// For Darcy the facet block of add/mult is built on the projection matrix
/// M_u + D^T diag(|K|) D of the same mesh.
Preconditioner build_preconditioner(PrecondKind kind, const AssembledSystem& system, const PolygonalMesh& mesh,
                                    SmootherKind smoother = SmootherKind::diag,
                                    MultiplicativeRecursion recursion = MultiplicativeRecursion::literal);

}  // namespace vemasp
