#pragma once

// Unrestarted left-preconditioned GMRES and spectral condition numbers.

#include "vemasp/linalg.hpp"
#include "vemasp/precond.hpp"

#include <string>
#include <vector>

namespace vemasp {

enum class SolveStatus { converged, max_iterations, breakdown };

std::string to_string(SolveStatus s);

struct SolveResult {
  Vector x;
  int iterations = 0;
  /// ||B(b - A x_k)|| / ||B b|| for k = 0, 1, ...; starts at 1.
  std::vector<double> history;
  SolveStatus status = SolveStatus::max_iterations;

  bool converged() const { return status == SolveStatus::converged; }
};

struct GmresOptions {
  double tol = 1e-8;
  int maxit = 2000;
};

/// GMRES on B A x = B b from x0 = 0, modified Gram-Schmidt with one
/// reorthogonalization pass. `b_prec` may be null for B = I.
SolveResult gmres(const LinearOperator& a, const Preconditioner* b_prec, const Vector& b,
                  const GmresOptions& opts = {});
SolveResult gmres(const SparseMatrix& a, const Preconditioner* b_prec, const Vector& b,
                  const GmresOptions& opts = {});

/// Default cap on the total dimension for condition numbers; the
/// VEMASP_DENSE_CAP environment variable overrides it.
inline constexpr Index kDefaultDenseCap = 8000;
/// Up to this dimension the spectrum is computed by dense eigensolvers;
/// between this and the cap by Lanczos / Arnoldi.
inline constexpr Index kDefaultDenseLimit = 1500;

Index dense_cap_from_env();

struct ConditionOptions {
  Index cap = dense_cap_from_env();
  Index dense_limit = kDefaultDenseLimit;
  /// Above the cap, return a Krylov estimate instead of throwing.
  bool estimate_above_cap = false;
  int max_krylov_steps = 400;
  double krylov_rtol = 1e-7;
};

struct ConditionResult {
  double kappa = 0.0;
  double lambda_min = 0.0;  // smallest |lambda|
  double lambda_max = 0.0;  // largest |lambda|
  bool estimated = false;   // Krylov estimate rather than a full eigensolve
  std::string method;
};

/// kappa(B A) = max|lambda| / min|lambda|. For symmetric B this is the
/// spectrum of the pencil (A, B^{-1}); for nonsymmetric B the eigenvalues
/// of B A. `b_prec` may be null for B = I. Throws DimensionExceedsCap above
/// the cap unless `estimate_above_cap`.
ConditionResult condition_number(const SparseMatrix& a, const Preconditioner* b_prec,
                                 const ConditionOptions& opts = {});

// Krylov eigenvalue helpers.

/// Extreme eigenvalues of P Q with P symmetric positive definite and Q
/// symmetric, by Lanczos in the P^{-1} inner product with full
/// reorthogonalization. Returns the Ritz values, ascending.
std::vector<double> lanczos_ritz_values(const LinearOperator& p, const LinearOperator& q, int max_steps,
                                        double rtol, unsigned seed = 1);

/// Ritz values of a general operator after `steps` Arnoldi steps, as
/// moduli, ascending.
std::vector<double> arnoldi_ritz_moduli(const LinearOperator& op, int max_steps, double rtol, unsigned seed = 1);

}  // namespace vemasp
