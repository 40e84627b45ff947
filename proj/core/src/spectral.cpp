#include "vemasp/errors.hpp"
#include "vemasp/krylov.hpp"
#include "vemasp/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace vemasp {

Index dense_rank(const DenseMatrix& m, double rel_threshold) {
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(m);
  qr.setThreshold(rel_threshold);
  return qr.rank();
}

double symmetry_defect(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();
  const SparseMatrix diff = m - t;
  double worst = 0.0;
  for (Index j = 0; j < diff.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(diff, j); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

SparseMatrix diagonal_matrix(const Vector& d) {
  SparseMatrix m(d.size(), d.size());
  m.reserve(Eigen::VectorXi::Ones(d.size()));
  for (Index i = 0; i < d.size(); ++i) m.insert(i, i) = d(i);
  m.makeCompressed();
  return m;
}

namespace {

Vector random_start(Index n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = dist(gen);
  return v;
}

bool settled(double prev, double cur, double rtol) { return std::abs(cur - prev) <= rtol * std::abs(cur); }

constexpr int kCheckEvery = 5;

}  // namespace

std::vector<double> lanczos_ritz_values(const LinearOperator& p, const LinearOperator& q, int max_steps,
                                        double rtol, unsigned seed) {
  const Index n = p.size();
  const int steps = static_cast<int>(std::min<Index>(max_steps, n));
  // z_j = P r_j, normalized so that r_j . z_j = 1.
  std::vector<Vector> rs;
  std::vector<Vector> zs;
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples j and j+1

  Vector r = random_start(n, seed);
  Vector z = p(r);
  double b0 = std::sqrt(r.dot(z));
  rs.push_back(r / b0);
  zs.push_back(z / b0);

  std::vector<double> ritz;
  double prev_lo = 0.0;
  double prev_hi = 0.0;
  double scale = 0.0;
  for (int j = 0; j < steps; ++j) {
    Vector w = q(zs[static_cast<std::size_t>(j)]);
    const double a = w.dot(zs[static_cast<std::size_t>(j)]);
    alpha.push_back(a);
    // Full reorthogonalization, twice.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < zs.size(); ++i) {
        const double c = w.dot(zs[i]);
        w -= c * rs[i];
      }
    }
    Vector u = p(w);
    const double bb = w.dot(u);

    // invariant subspace: measured against the largest coefficient so far, not the current one,
    // which is itself tiny once the iteration runs into the kernel of a singular Q
    scale = std::max({scale, std::abs(a), beta.empty() ? 0.0 : beta.back()});
    const bool last = j + 1 == steps || !(bb > 0.0) || std::sqrt(std::max(bb, 0.0)) <= 1e-12 * scale;
    if ((j + 1) % kCheckEvery == 0 || last) {
      const Index m = static_cast<Index>(alpha.size());
      Vector diag = Eigen::Map<const Vector>(alpha.data(), m);
      Vector sub = m > 1 ? Vector(Eigen::Map<const Vector>(beta.data(), m - 1)) : Vector(0);
      // computeFromTridiagonal does not rescale; its QR stalls on unnormalized input
      const double t = std::max(diag.cwiseAbs().maxCoeff(), sub.size() ? sub.cwiseAbs().maxCoeff() : 0.0);
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es;
      es.computeFromTridiagonal(diag / t, sub / t, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw FactorizationFailure("Lanczos: tridiagonal eigensolve did not converge");
      ritz.resize(static_cast<std::size_t>(m));
      for (Index i = 0; i < m; ++i) ritz[static_cast<std::size_t>(i)] = t * es.eigenvalues()(i);
      const double lo = ritz.front();
      const double hi = ritz.back();
      const bool conv = m > kCheckEvery && settled(prev_lo, lo, rtol) && settled(prev_hi, hi, rtol);
      prev_lo = lo;
      prev_hi = hi;
      if (conv || last) break;
    }
    const double bn = std::sqrt(bb);
    beta.push_back(bn);
    rs.push_back(w / bn);
    zs.push_back(u / bn);
  }
  return ritz;
}

std::vector<double> arnoldi_ritz_moduli(const LinearOperator& op, int max_steps, double rtol, unsigned seed) {
  const Index n = op.size();
  const int steps = static_cast<int>(std::min<Index>(max_steps, n));
  std::vector<Vector> v;
  DenseMatrix h = DenseMatrix::Zero(steps + 1, steps);
  Vector start = random_start(n, seed);
  v.push_back(start / start.norm());

  std::vector<double> moduli;
  double prev_lo = 0.0;
  double prev_hi = 0.0;
  for (int j = 0; j < steps; ++j) {
    Vector w = op(v[static_cast<std::size_t>(j)]);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double c = v[i].dot(w);
        h(static_cast<Index>(i), j) += c;
        w -= c * v[i];
      }
    }
    const double hn = w.norm();
    h(j + 1, j) = hn;
    const bool last = j + 1 == steps || hn <= 1e-13 * h.col(j).norm();
    if ((j + 1) % kCheckEvery == 0 || last) {
      Eigen::EigenSolver<DenseMatrix> es(h.topLeftCorner(j + 1, j + 1), false);
      moduli.clear();
      for (Index i = 0; i <= j; ++i) moduli.push_back(std::abs(es.eigenvalues()(i)));
      std::sort(moduli.begin(), moduli.end());
      const bool conv =
          j + 1 > kCheckEvery && settled(prev_lo, moduli.front(), rtol) && settled(prev_hi, moduli.back(), rtol);
      prev_lo = moduli.front();
      prev_hi = moduli.back();
      if (conv || last) break;
    }
    v.push_back(w / hn);
  }
  return moduli;
}

}  // namespace vemasp
