#include "vemasp/krylov.hpp"

#include "vemasp/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cmath>
#include <cstdlib>
#include <memory>

namespace vemasp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::breakdown: return "breakdown";
  }
  return "?";
}

SolveResult gmres(const LinearOperator& a, const Preconditioner* b_prec, const Vector& b, const GmresOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("GMRES tolerance must be positive");
  if (opts.maxit < 1) throw InvalidArgument("GMRES needs maxit >= 1");
  const Index n = a.size();
  if (b.size() != n || (b_prec && b_prec->size() != n)) throw InvalidArgument("GMRES dimension mismatch");

  auto precondition = [&](const Vector& r) -> Vector { return b_prec ? (*b_prec)(r) : r; };

  SolveResult res;
  res.x = Vector::Zero(n);
  const Vector bb = precondition(b);
  const double beta = bb.norm();
  if (beta == 0.0) {
    res.history = {0.0};
    res.status = SolveStatus::converged;
    return res;
  }
  res.history.push_back(1.0);

  const int m = opts.maxit;
  std::vector<Vector> v;
  v.push_back(bb / beta);
  std::vector<Vector> hcols;  // column j holds h(0..j+1, j), rotated in place
  std::vector<double> cs;
  std::vector<double> sn;
  Vector g = Vector::Zero(1);
  g(0) = beta;

  int k = 0;
  for (; k < m; ++k) {
    Vector w = precondition(a(v[static_cast<std::size_t>(k)]));
    const double wnorm0 = w.norm();
    Vector h = Vector::Zero(k + 2);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= k; ++i) {
        const double c = v[static_cast<std::size_t>(i)].dot(w);
        h(i) += c;
        w -= c * v[static_cast<std::size_t>(i)];
      }
    }
    h(k + 1) = w.norm();
    const bool lucky = h(k + 1) <= 1e-14 * wnorm0;

    for (int i = 0; i < k; ++i) {
      const double t = cs[static_cast<std::size_t>(i)] * h(i) + sn[static_cast<std::size_t>(i)] * h(i + 1);
      h(i + 1) = -sn[static_cast<std::size_t>(i)] * h(i) + cs[static_cast<std::size_t>(i)] * h(i + 1);
      h(i) = t;
    }
    const double r = std::hypot(h(k), h(k + 1));
    if (r == 0.0) {
      res.status = SolveStatus::breakdown;
      break;
    }
    cs.push_back(h(k) / r);
    sn.push_back(h(k + 1) / r);
    h(k) = r;
    h(k + 1) = 0.0;
    g.conservativeResize(k + 2);
    g(k + 1) = -sn.back() * g(k);
    g(k) = cs.back() * g(k);
    hcols.push_back(h);

    const double rel = std::abs(g(k + 1)) / beta;
    res.history.push_back(rel);
    if (rel <= opts.tol) {
      res.status = SolveStatus::converged;
      ++k;
      break;
    }
    if (lucky) {
      res.status = SolveStatus::breakdown;
      ++k;
      break;
    }
    v.push_back(w / w.norm());
  }
  res.iterations = static_cast<int>(res.history.size()) - 1;

  // Back substitution on the triangular factor.
  const int dim = static_cast<int>(hcols.size());
  Vector y = Vector::Zero(dim);
  for (int i = dim - 1; i >= 0; --i) {
    double s = g(i);
    for (int j = i + 1; j < dim; ++j) s -= hcols[static_cast<std::size_t>(j)](i) * y(j);
    y(i) = s / hcols[static_cast<std::size_t>(i)](i);
  }
  for (int j = 0; j < dim; ++j) res.x += y(j) * v[static_cast<std::size_t>(j)];
  return res;
}

SolveResult gmres(const SparseMatrix& a, const Preconditioner* b_prec, const Vector& b, const GmresOptions& opts) {
  return gmres(LinearOperator::from_matrix(a), b_prec, b, opts);
}

Index dense_cap_from_env() {
  const char* env = std::getenv("VEMASP_DENSE_CAP");
  if (!env || !*env) return kDefaultDenseCap;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (*end != '\0' || v <= 0) throw InvalidArgument(std::string("VEMASP_DENSE_CAP must be a positive integer, got ") + env);
  return static_cast<Index>(v);
}

namespace {

bool has_zero_diagonal(const SparseMatrix& a) {
  const Vector d = a.diagonal();
  for (Index i = 0; i < d.size(); ++i) {
    if (d(i) == 0.0) return true;
  }
  return false;
}

DenseMatrix materialize(const Preconditioner& b) {
  const Index n = b.size();
  DenseMatrix m(n, n);
  Vector e = Vector::Zero(n);
  Vector col;
  for (Index j = 0; j < n; ++j) {
    e(j) = 1.0;
    b.apply(e, col);
    m.col(j) = col;
    e(j) = 0.0;
  }
  return m;
}

ConditionResult from_moduli(double lo, double hi, bool estimated, std::string method) {
  ConditionResult r;
  r.lambda_min = lo;
  r.lambda_max = hi;
  r.kappa = hi / lo;
  r.estimated = estimated;
  r.method = std::move(method);
  return r;
}

ConditionResult dense_condition(const SparseMatrix& a, const Preconditioner* b) {
  const Index n = a.rows();
  const DenseMatrix ad(a);
  if (!b || b->symmetric()) {
    // Pencil (A, B^{-1}): eigenvalues of L^T A L with B = L L^T.
    DenseMatrix s;
    if (!b || b->diagonal()) {
      const Vector l = b ? Vector(b->diagonal()->cwiseSqrt()) : Vector(Vector::Ones(n));
      s = l.asDiagonal() * ad * l.asDiagonal();
    } else {
      DenseMatrix bm = materialize(*b);
      bm = 0.5 * (bm + bm.transpose()).eval();
      Eigen::LLT<DenseMatrix> llt(bm);
      if (llt.info() != Eigen::Success) throw FactorizationFailure("preconditioner is not positive definite");
      const DenseMatrix l = llt.matrixL();
      s = l.transpose() * ad * l;
    }
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s, Eigen::EigenvaluesOnly);
    const Vector ev = es.eigenvalues().cwiseAbs();
    return from_moduli(ev.minCoeff(), ev.maxCoeff(), false, "dense symmetric");
  }
  DenseMatrix ba(n, n);
  Vector col;
  for (Index j = 0; j < n; ++j) {
    b->apply(ad.col(j), col);
    ba.col(j) = col;
  }
  Eigen::EigenSolver<DenseMatrix> es(ba, false);
  const Vector ev = es.eigenvalues().cwiseAbs();
  return from_moduli(ev.minCoeff(), ev.maxCoeff(), false, "dense nonsymmetric");
}

double max_abs(const std::vector<double>& v) { return std::max(std::abs(v.front()), std::abs(v.back())); }

ConditionResult krylov_condition(const SparseMatrix& a, const Preconditioner* b, const ConditionOptions& opts) {
  const Index n = a.rows();
  const bool indefinite = has_zero_diagonal(a);
  const LinearOperator aop = LinearOperator::from_matrix(a);
  const LinearOperator bop = b ? b->op() : LinearOperator(n, [](const Vector& x, Vector& y) { y = x; });
  const int steps = opts.max_krylov_steps;
  const double rtol = opts.krylov_rtol;

  if (b && !b->symmetric()) {
    LinearOperator ba(n, [&](const Vector& x, Vector& y) { b->apply(a * x, y); });
    if (!indefinite) {
      const auto mod = arnoldi_ritz_moduli(ba, steps, rtol);
      return from_moduli(mod.front(), mod.back(), true, "Arnoldi");
    }
    // Squaring folds the two halves of an indefinite spectrum together.
    LinearOperator ba2(n, [&](const Vector& x, Vector& y) { y = ba(ba(x)); });
    const auto mod = arnoldi_ritz_moduli(ba2, steps, rtol);
    return from_moduli(std::sqrt(mod.front()), std::sqrt(mod.back()), true, "Arnoldi, squared");
  }

  const auto top = lanczos_ritz_values(bop, aop, steps, rtol);
  const double hi = max_abs(top);

  const std::optional<Vector> diag = b ? b->diagonal() : std::optional<Vector>(Vector::Ones(n));
  if (diag) {
    // Shift-invert: eigenvalues of B^{-1} A^{-1} are the reciprocals.
    const Vector binv = diag->cwiseInverse();
    LinearOperator pinv(n, [binv](const Vector& x, Vector& y) { y = binv.cwiseProduct(x); });
    std::function<Vector(const Vector&)> solve;
    if (!indefinite) {
      auto llt = std::make_shared<Eigen::SimplicialLLT<SparseMatrix>>(a);
      if (llt->info() != Eigen::Success) throw FactorizationFailure("Cholesky factorization of A failed");
      solve = [llt](const Vector& x) -> Vector { return llt->solve(x); };
    } else {
      auto lu = std::make_shared<Eigen::SparseLU<SparseMatrix>>();
      lu->analyzePattern(a);
      lu->factorize(a);
      if (lu->info() != Eigen::Success) throw FactorizationFailure("LU factorization of A failed");
      solve = [lu](const Vector& x) -> Vector { return lu->solve(x); };
    }
    LinearOperator ainv(n, [solve](const Vector& x, Vector& y) { y = solve(x); });
    const auto inv = lanczos_ritz_values(pinv, ainv, steps, rtol);
    return from_moduli(1.0 / max_abs(inv), hi, true, "Lanczos, shift-invert");
  }
  if (!indefinite) return from_moduli(top.front(), hi, true, "Lanczos");
  // Indefinite pencil with a non-diagonal B: the smallest |lambda| sits
  // inside the spectrum, so run on B A B A whose eigenvalues are lambda^2.
  LinearOperator aba(n, [&](const Vector& x, Vector& y) { y = a * (*b)(a * x); });
  const auto sq = lanczos_ritz_values(bop, aba, steps, rtol);
  return from_moduli(std::sqrt(std::max(sq.front(), 0.0)), hi, true, "Lanczos, squared");
}

}  // namespace

ConditionResult condition_number(const SparseMatrix& a, const Preconditioner* b_prec, const ConditionOptions& opts) {
  const Index n = a.rows();
  if (b_prec && b_prec->size() != n) throw InvalidArgument("condition_number dimension mismatch");
  if (n > opts.cap && !opts.estimate_above_cap) {
    throw DimensionExceedsCap("dimension " + std::to_string(n) + " exceeds the condition number cap " +
                              std::to_string(opts.cap));
  }
  if (n <= opts.dense_limit) return dense_condition(a, b_prec);
  return krylov_condition(a, b_prec, opts);
}

}  // namespace vemasp
