#include "vemasp/precond.hpp"

#include "vemasp/complex_ops.hpp"
#include "vemasp/errors.hpp"

#include <Eigen/SparseCholesky>

namespace vemasp {

Preconditioner Preconditioner::identity(Index size) {
  return {size, [](const Vector& r, Vector& z) { z = r; }, true, "none", Vector::Ones(size)};
}

Preconditioner Preconditioner::inverse_diagonal(const Vector& d, std::string name) {
  for (Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > 0.0)) {
      throw NonPositiveDiagonal("diagonal entry " + std::to_string(i) + " is " + std::to_string(d(i)));
    }
  }
  Vector inv = d.cwiseInverse();
  auto fn = [inv](const Vector& r, Vector& z) { z = inv.cwiseProduct(r); };
  return {d.size(), std::move(fn), true, std::move(name), inv};
}

Smoother smoother_diag(const SparseMatrix& a) {
  Smoother s{SmootherKind::diag, a.diagonal()};
  for (Index i = 0; i < s.d.size(); ++i) {
    if (!(s.d(i) > 0.0)) {
      throw NonPositiveDiagonal("diag(A)[" + std::to_string(i) + "] = " + std::to_string(s.d(i)));
    }
  }
  return s;
}

Smoother smoother_stab(const PolygonalMesh& mesh) {
  Smoother s{SmootherKind::stab, Vector::Zero(mesh.num_facets())};
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const double diam = cell_geometry(mesh, k).diameter;
    for (const FacetIncidence& fi : mesh.cell_facets(k)) s.d(fi.facet) += 1.0 / (diam * mesh.facet_length(fi.facet));
  }
  return s;
}

Smoother make_smoother(SmootherKind kind, const SparseMatrix& a, const PolygonalMesh& mesh) {
  return kind == SmootherKind::diag ? smoother_diag(a) : smoother_stab(mesh);
}

std::function<Vector(const Vector&)> cholesky_solver(const SparseMatrix& a, const std::string& what) {
  auto llt = std::make_shared<Eigen::SimplicialLLT<SparseMatrix>>(a);
  if (llt->info() != Eigen::Success) throw FactorizationFailure("Cholesky factorization of " + what + " failed");
  return [llt](const Vector& r) -> Vector { return llt->solve(r); };
}

std::vector<AuxiliarySpace> nodal_auxiliary_spaces(const PolygonalMesh& mesh) {
  // A1 = blockdiag(A2, A2): one factorization serves both components.
  const SparseMatrix a2 = assemble_nodal_h1(mesh, Arity::scalar);
  auto solve2 = cholesky_solver(a2, "A2");
  const Index n = a2.rows();
  auto solve1 = [solve2, n](const Vector& r) -> Vector {
    Vector z(2 * n);
    z.head(n) = solve2(r.head(n));
    z.tail(n) = solve2(r.tail(n));
    return z;
  };
  return {{"transfer", transfer_matrix(mesh), solve1}, {"curl", curl_matrix(mesh), solve2}};
}

Preconditioner make_additive(const Smoother& s, std::vector<AuxiliarySpace> spaces) {
  const Vector dinv = s.d.cwiseInverse();
  auto sp = std::make_shared<const std::vector<AuxiliarySpace>>(std::move(spaces));
  auto fn = [dinv, sp](const Vector& r, Vector& z) {
    z = dinv.cwiseProduct(r);
    for (const AuxiliarySpace& a : *sp) {
      const Vector coarse = a.pi.transpose() * r;
      z.noalias() += a.pi * a.solve(coarse);
    }
  };
  return {s.d.size(), std::move(fn), true, "add"};
}

Preconditioner make_multiplicative(const SparseMatrix& a, const Smoother& s, std::vector<AuxiliarySpace> spaces,
                                   MultiplicativeRecursion recursion) {
  const Vector dinv = s.d.cwiseInverse();
  auto sp = std::make_shared<const std::vector<AuxiliarySpace>>(std::move(spaces));
  auto mat = std::make_shared<const SparseMatrix>(a);
  auto fn = [dinv, sp, mat, recursion](const Vector& r0, Vector& z) {
    z = dinv.cwiseProduct(r0);
    Vector r = r0;
    for (const AuxiliarySpace& aux : *sp) {
      if (recursion == MultiplicativeRecursion::residual) {
        r = r0 - *mat * z;
      } else {
        r -= *mat * z;
      }
      const Vector coarse = aux.pi.transpose() * r;
      z.noalias() += aux.pi * aux.solve(coarse);
    }
  };
  return {s.d.size(), std::move(fn), false, "mult"};
}

Preconditioner build_additive(const SparseMatrix& a, const PolygonalMesh& mesh, SmootherKind kind) {
  return make_additive(make_smoother(kind, a, mesh), nodal_auxiliary_spaces(mesh));
}

Preconditioner build_multiplicative(const SparseMatrix& a, const PolygonalMesh& mesh, SmootherKind kind,
                                    MultiplicativeRecursion recursion) {
  return make_multiplicative(a, make_smoother(kind, a, mesh), nodal_auxiliary_spaces(mesh), recursion);
}

Preconditioner build_darcy_block(const Preconditioner& b_facet, const PolygonalMesh& mesh) {
  const Index nf = b_facet.size();
  const Vector area_inv = cell_areas(mesh).cwiseInverse();
  const Index nc = area_inv.size();
  auto fn = [b_facet, area_inv, nf, nc](const Vector& r, Vector& z) {
    z.resize(nf + nc);
    Vector zu;
    b_facet.apply(r.head(nf), zu);
    z.head(nf) = zu;
    z.tail(nc) = area_inv.cwiseProduct(r.tail(nc));
  };
  std::optional<Vector> diag;
  if (b_facet.diagonal()) {
    diag = Vector(nf + nc);
    diag->head(nf) = *b_facet.diagonal();
    diag->tail(nc) = area_inv;
  }
  return {nf + nc, std::move(fn), b_facet.symmetric(), b_facet.name(), std::move(diag)};
}

Preconditioner build_diag_reference(const AssembledSystem& system, const PolygonalMesh& mesh) {
  if (system.kind == ProblemKind::projection) return Preconditioner::inverse_diagonal(system.matrix.diagonal());
  Vector d(system.size());
  d.head(system.facet_block) = system.matrix.diagonal().head(system.facet_block);
  d.tail(system.cell_block) = cell_areas(mesh);
  return Preconditioner::inverse_diagonal(d);
}

std::string to_string(PrecondKind k) {
  switch (k) {
    case PrecondKind::none: return "none";
    case PrecondKind::diag: return "diag";
    case PrecondKind::add: return "add";
    case PrecondKind::mult: return "mult";
  }
  return "?";
}

std::string to_string(SmootherKind k) { return k == SmootherKind::diag ? "diag" : "stab"; }

PrecondKind parse_precond_kind(const std::string& s) {
  if (s == "none") return PrecondKind::none;
  if (s == "diag") return PrecondKind::diag;
  if (s == "add") return PrecondKind::add;
  if (s == "mult") return PrecondKind::mult;
  throw InvalidArgument("unknown preconditioner \"" + s + "\" (expected none, diag, add or mult)");
}

SmootherKind parse_smoother_kind(const std::string& s) {
  if (s == "diag") return SmootherKind::diag;
  if (s == "stab") return SmootherKind::stab;
  throw InvalidArgument("unknown smoother \"" + s + "\" (expected diag or stab)");
}

Preconditioner build_preconditioner(PrecondKind kind, const AssembledSystem& system, const PolygonalMesh& mesh,
                                    SmootherKind smoother, MultiplicativeRecursion recursion) {
  switch (kind) {
    case PrecondKind::none: return Preconditioner::identity(system.size());
    case PrecondKind::diag: return build_diag_reference(system, mesh);
    case PrecondKind::add:
    case PrecondKind::mult: {
      const SparseMatrix a = system.kind == ProblemKind::projection ? system.matrix : assemble_projection(mesh);
      Preconditioner b = kind == PrecondKind::add ? build_additive(a, mesh, smoother)
                                                  : build_multiplicative(a, mesh, smoother, recursion);
      return system.kind == ProblemKind::projection ? b : build_darcy_block(b, mesh);
    }
  }
  throw InvalidArgument("unknown preconditioner kind");
}

}  // namespace vemasp
