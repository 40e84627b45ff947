#include "vemasp/problems.hpp"

#include "quadrature.hpp"
#include "vemasp/errors.hpp"
#include "vemasp/vem_local.hpp"

#include <cmath>
#include <numbers>

namespace vemasp {

namespace {

constexpr int kDataOrder = 5;

// Scatters a local matrix in outward facet dofs, flipping signs to the
// global facet orientation. Cells are visited in order so the result is
// reproducible bit for bit.
template <class LocalFn>
SparseMatrix scatter_facets(const PolygonalMesh& mesh, LocalFn&& local) {
  std::vector<Triplet> t;
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const DenseMatrix m = local(mesh.cell_points(k));
    const auto inc = mesh.cell_facets(k);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = 0; j < inc.size(); ++j) {
        t.emplace_back(inc[i].facet, inc[j].facet,
                       inc[i].sign * inc[j].sign * m(static_cast<Index>(i), static_cast<Index>(j)));
      }
    }
  }
  SparseMatrix a(mesh.num_facets(), mesh.num_facets());
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

template <class LocalFn>
SparseMatrix scatter_nodes(const PolygonalMesh& mesh, LocalFn&& local) {
  std::vector<Triplet> t;
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const DenseMatrix m = local(mesh.cell_points(k));
    const auto ids = mesh.cell(k);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = 0; j < ids.size(); ++j) {
        t.emplace_back(ids[i], ids[j], m(static_cast<Index>(i), static_cast<Index>(j)));
      }
    }
  }
  SparseMatrix a(mesh.num_vertices(), mesh.num_vertices());
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

}  // namespace

SparseMatrix assemble_facet_mass(const PolygonalMesh& mesh) {
  return scatter_facets(mesh, [](const std::vector<Point2>& p) { return facet_mass(p).mass; });
}

SparseMatrix assemble_facet_stabilization(const PolygonalMesh& mesh) {
  return scatter_facets(mesh, [](const std::vector<Point2>& p) { return facet_mass(p).stabilization; });
}

Vector cell_areas(const PolygonalMesh& mesh) {
  Vector a(mesh.num_cells());
  for (int k = 0; k < mesh.num_cells(); ++k) a(k) = cell_geometry(mesh, k).area;
  return a;
}

SparseMatrix assemble_projection(const PolygonalMesh& mesh) {
  const SparseMatrix d = div_matrix(mesh);
  SparseMatrix a = assemble_facet_mass(mesh);
  a += SparseMatrix(d.transpose() * diagonal_matrix(cell_areas(mesh)) * d);
  a.makeCompressed();
  return a;
}

Vector assemble_rhs_projection(const PolygonalMesh& mesh, const VectorField& f) {
  Vector b = Vector::Zero(mesh.num_facets());
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const auto pts = mesh.cell_points(k);
    const DenseMatrix proj = facet_projection(pts);
    const Point2 c = polygon_geometry(pts).centroid;
    const Eigen::Vector3d moments = detail::integrate_polygon(
        pts, c,
        [&](Point2 x) -> Eigen::Vector3d {
          const Point2 v = f(x);
          return {v.x, v.y, dot(v, x - c)};
        },
        kDataOrder);
    const Vector local = proj.transpose() * moments;
    const auto inc = mesh.cell_facets(k);
    for (std::size_t i = 0; i < inc.size(); ++i) b(inc[i].facet) += inc[i].sign * local(static_cast<Index>(i));
  }
  return b;
}

AssembledSystem assemble_projection_system(const PolygonalMesh& mesh, const VectorField& f) {
  AssembledSystem sys;
  sys.kind = ProblemKind::projection;
  sys.matrix = assemble_projection(mesh);
  sys.rhs = assemble_rhs_projection(mesh, f);
  sys.dofs = DofMap::of(mesh);
  sys.facet_block = mesh.num_facets();
  return sys;
}

SparseMatrix assemble_darcy_coupling(const PolygonalMesh& mesh) {
  std::vector<Triplet> t;
  for (int k = 0; k < mesh.num_cells(); ++k) {
    for (const FacetIncidence& fi : mesh.cell_facets(k)) t.emplace_back(k, fi.facet, fi.sign);
  }
  SparseMatrix b(mesh.num_cells(), mesh.num_facets());
  b.setFromTriplets(t.begin(), t.end());
  return b;
}

Vector assemble_rhs_cells(const PolygonalMesh& mesh, const ScalarField& g) {
  Vector b(mesh.num_cells());
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const auto pts = mesh.cell_points(k);
    b(k) = detail::integrate_polygon(pts, polygon_geometry(pts).centroid, g, kDataOrder);
  }
  return b;
}

AssembledSystem assemble_darcy(const PolygonalMesh& mesh, const VectorField& f, const ScalarField& g) {
  const Index nf = mesh.num_facets();
  const Index nc = mesh.num_cells();
  const SparseMatrix mu = assemble_facet_mass(mesh);
  const SparseMatrix b = assemble_darcy_coupling(mesh);

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(mu.nonZeros() + 2 * b.nonZeros()));
  for (Index j = 0; j < mu.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(mu, j); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  }
  for (Index j = 0; j < b.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(b, j); it; ++it) {
      t.emplace_back(nf + it.row(), it.col(), -it.value());
      t.emplace_back(it.col(), nf + it.row(), -it.value());
    }
  }
  AssembledSystem sys;
  sys.kind = ProblemKind::darcy;
  sys.matrix.resize(nf + nc, nf + nc);
  sys.matrix.setFromTriplets(t.begin(), t.end());
  sys.rhs.resize(nf + nc);
  sys.rhs.head(nf) = assemble_rhs_projection(mesh, f);
  sys.rhs.tail(nc) = assemble_rhs_cells(mesh, g);
  sys.dofs = DofMap::of(mesh);
  sys.facet_block = nf;
  sys.cell_block = nc;
  return sys;
}

SparseMatrix assemble_nodal_stiffness(const PolygonalMesh& mesh) {
  return scatter_nodes(mesh, [](const std::vector<Point2>& p) { return nodal_stiffness(p); });
}

SparseMatrix assemble_nodal_mass(const PolygonalMesh& mesh) {
  return scatter_nodes(mesh, [](const std::vector<Point2>& p) { return nodal_mass(p); });
}

SparseMatrix assemble_nodal_h1(const PolygonalMesh& mesh, Arity arity) {
  const SparseMatrix a2 = scatter_nodes(mesh, [](const std::vector<Point2>& p) {
    const LocalNodalMatrices m = nodal_matrices(p);
    return DenseMatrix(m.stiffness + m.mass);
  });
  if (arity == Arity::scalar) return a2;
  const Index n = a2.rows();
  std::vector<Triplet> t;
  t.reserve(2 * static_cast<std::size_t>(a2.nonZeros()));
  for (Index j = 0; j < a2.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(a2, j); it; ++it) {
      t.emplace_back(it.row(), it.col(), it.value());
      t.emplace_back(n + it.row(), n + it.col(), it.value());
    }
  }
  SparseMatrix a1(2 * n, 2 * n);
  a1.setFromTriplets(t.begin(), t.end());
  return a1;
}

VectorField vector_field(const std::string& name) {
  using std::numbers::pi;
  if (name == "f1") {
    return [](Point2 p) {
      return Point2{-2.0 * pi * std::cos(2.0 * pi * p.x) * std::sin(4.0 * pi * p.y),
                    -4.0 * pi * std::cos(4.0 * pi * p.y) * std::sin(2.0 * pi * p.x)};
    };
  }
  if (name == "f2") {
    return [](Point2 p) { return Point2{std::cos(p.x) * std::sinh(p.y), std::sin(p.x) * std::cosh(p.y)}; };
  }
  if (name == "zero") return [](Point2) { return Point2{}; };
  throw UnknownField("unknown vector field \"" + name + "\" (expected f1 or f2)");
}

ScalarField scalar_field(const std::string& name) {
  using std::numbers::pi;
  if (name == "g1") {
    return [](Point2 p) { return -40.0 * pi * pi * std::cos(2.0 * pi * p.x) * std::sin(4.0 * pi * p.y); };
  }
  if (name == "g2" || name == "zero") return [](Point2) { return 0.0; };
  throw UnknownField("unknown scalar field \"" + name + "\" (expected g1 or g2)");
}

FieldPair data_library(const std::string& name) {
  if (name == "f1") return {name, vector_field("f1"), scalar_field("g1")};
  if (name == "f2") return {name, vector_field("f2"), scalar_field("g2")};
  throw UnknownField("unknown data set \"" + name + "\" (expected f1 or f2)");
}

std::vector<std::string> data_names() { return {"f1", "f2"}; }

}  // namespace vemasp
