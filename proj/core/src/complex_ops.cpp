#include "vemasp/complex_ops.hpp"

#include "quadrature.hpp"

#include <cmath>
#include <numbers>

namespace vemasp {

SparseMatrix curl_matrix(const PolygonalMesh& mesh) {
  std::vector<Triplet> t;
  t.reserve(2 * static_cast<std::size_t>(mesh.num_facets()));
  for (int f = 0; f < mesh.num_facets(); ++f) {
    t.emplace_back(f, mesh.facet(f).a, -1.0);
    t.emplace_back(f, mesh.facet(f).b, 1.0);
  }
  SparseMatrix c(mesh.num_facets(), mesh.num_vertices());
  c.setFromTriplets(t.begin(), t.end());
  return c;
}

SparseMatrix div_matrix(const PolygonalMesh& mesh) {
  std::vector<Triplet> t;
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const double area = cell_geometry(mesh, k).area;
    for (const FacetIncidence& fi : mesh.cell_facets(k)) t.emplace_back(k, fi.facet, fi.sign / area);
  }
  SparseMatrix d(mesh.num_cells(), mesh.num_facets());
  d.setFromTriplets(t.begin(), t.end());
  return d;
}

SparseMatrix transfer_matrix(const PolygonalMesh& mesh) {
  const int nv = mesh.num_vertices();
  std::vector<Triplet> t;
  t.reserve(4 * static_cast<std::size_t>(mesh.num_facets()));
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Point2 n = mesh.facet_normal(f);
    const double half = 0.5 * mesh.facet_length(f);
    for (int v : {mesh.facet(f).a, mesh.facet(f).b}) {
      t.emplace_back(f, v, half * n.x);
      t.emplace_back(f, nv + v, half * n.y);
    }
  }
  SparseMatrix m(mesh.num_facets(), 2 * nv);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Vector interpolate_facet(const PolygonalMesh& mesh, const VectorField& v, int order) {
  Vector dofs(mesh.num_facets());
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Point2 n = mesh.facet_normal(f);
    dofs(f) = detail::integrate_segment(mesh.vertex(mesh.facet(f).a), mesh.vertex(mesh.facet(f).b),
                                        [&](Point2 x) { return dot(v(x), n); }, order);
  }
  return dofs;
}

Vector interpolate_nodal(const PolygonalMesh& mesh, const ScalarField& v) {
  Vector dofs(mesh.num_vertices());
  for (int i = 0; i < mesh.num_vertices(); ++i) dofs(i) = v(mesh.vertex(i));
  return dofs;
}

Vector interpolate_cell(const PolygonalMesh& mesh, const ScalarField& v, int order) {
  Vector dofs(mesh.num_cells());
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const auto pts = mesh.cell_points(k);
    const CellGeometry g = polygon_geometry(pts);
    dofs(k) = detail::integrate_polygon(pts, g.centroid, v, order) / g.area;
  }
  return dofs;
}

std::vector<PotentialField> commuting_test_potentials() {
  using std::numbers::pi;
  return {
      {"x", [](Point2 p) { return p.x; }, [](Point2) { return Point2{0.0, 1.0}; }},
      {"y", [](Point2 p) { return p.y; }, [](Point2) { return Point2{-1.0, 0.0}; }},
      {"xy", [](Point2 p) { return p.x * p.y; }, [](Point2 p) { return Point2{-p.x, p.y}; }},
      {"sin(pi x) sin(pi y)",
       [](Point2 p) { return std::sin(pi * p.x) * std::sin(pi * p.y); },
       [](Point2 p) {
         return Point2{-pi * std::sin(pi * p.x) * std::cos(pi * p.y),
                       pi * std::cos(pi * p.x) * std::sin(pi * p.y)};
       }},
  };
}

ComplexReport verify_complex(const PolygonalMesh& mesh, double commuting_tol) {
  ComplexReport rep;
  rep.nodes = mesh.num_vertices();
  rep.facets = mesh.num_facets();
  rep.cells = mesh.num_cells();

  const SparseMatrix c = curl_matrix(mesh);
  // Integer incidence product: the 1/|K| scaling cannot turn a nonzero into 0.
  SparseMatrix signs(mesh.num_cells(), mesh.num_facets());
  {
    std::vector<Triplet> t;
    for (int k = 0; k < mesh.num_cells(); ++k) {
      for (const FacetIncidence& fi : mesh.cell_facets(k)) t.emplace_back(k, fi.facet, fi.sign);
    }
    signs.setFromTriplets(t.begin(), t.end());
  }
  const SparseMatrix dc = div_matrix(mesh) * c;
  const SparseMatrix sc = signs * c;
  rep.max_div_curl = 0.0;
  for (Index j = 0; j < dc.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(dc, j); it; ++it) rep.max_div_curl = std::max(rep.max_div_curl, std::abs(it.value()));
  }
  rep.div_curl_exact_zero = rep.max_div_curl == 0.0;
  for (Index j = 0; j < sc.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(sc, j); it; ++it) {
      if (it.value() != 0.0) rep.div_curl_exact_zero = false;
    }
  }
  if (!rep.div_curl_exact_zero) rep.failures.push_back("D*C has nonzero entries");

  if (rep.facets <= kDenseRankLimit) {
    rep.dense_checks = true;
    rep.rank_curl = dense_rank(DenseMatrix(c));
    rep.rank_div = dense_rank(DenseMatrix(signs));
    rep.kernel_div = rep.facets - rep.rank_div;
  } else {
    // Euler count: rank(C) = #nodes - 1 and rank(D) = #cells are then
    // equivalent to #nodes - #facets + #cells = 1.
    const bool euler = rep.nodes - rep.facets + rep.cells == 1;
    rep.rank_curl = euler ? rep.nodes - 1 : -1;
    rep.rank_div = euler ? rep.cells : -1;
    rep.kernel_div = euler ? rep.facets - rep.cells : -1;
  }
  if (rep.rank_curl != rep.nodes - 1) rep.failures.push_back("rank(C) != #nodes - 1");
  if (rep.rank_div != rep.cells) rep.failures.push_back("rank(D) != #cells");
  if (rep.kernel_div != rep.rank_curl) rep.failures.push_back("dim ker(D) != rank(C)");

  for (const PotentialField& p : commuting_test_potentials()) {
    const Vector lhs = interpolate_facet(mesh, p.curl, 9);
    const Vector rhs = c * interpolate_nodal(mesh, p.value);
    rep.commuting_error = std::max(rep.commuting_error, (lhs - rhs).lpNorm<Eigen::Infinity>());
  }
  if (!(rep.commuting_error <= commuting_tol)) rep.failures.push_back("commuting diagram violated");
  return rep;
}

}  // namespace vemasp
