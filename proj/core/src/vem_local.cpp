#include "vemasp/vem_local.hpp"

#include "quadrature.hpp"
#include "vemasp/errors.hpp"

#include <cmath>

namespace vemasp {

namespace {

CellGeometry checked_geometry(std::span<const Point2> pts) {
  if (pts.size() < 3) throw SingularGram("cell has fewer than 3 vertices");
  try {
    return polygon_geometry(pts);
  } catch (const NonPositiveArea& e) {
    throw SingularGram(std::string("degenerate cell geometry: ") + e.what());
  }
}

// Edge i runs from vertex i to vertex i+1; returns |e_i| times its outward normal.
Point2 scaled_outward_normal(std::span<const Point2> pts, std::size_t i) {
  const Point2 e = pts[(i + 1) % pts.size()] - pts[i];
  return {e.y, -e.x};
}

struct NodalParts {
  PolygonMoments mom;
  DenseMatrix grad;       // 2 x m
  Vector constant;        // value at the centroid
  DenseMatrix dof_of_pi;  // m x m, vertex values of the projection
};

NodalParts nodal_parts(std::span<const Point2> pts) {
  NodalParts np;
  np.mom = polygon_moments(pts);
  const auto m = static_cast<Index>(pts.size());
  Point2 xbar{};
  for (const Point2& p : pts) xbar = xbar + p;
  xbar = (1.0 / static_cast<double>(m)) * xbar;

  np.grad.resize(2, m);
  for (Index j = 0; j < m; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const Point2 g = (0.5 / np.mom.area) *
                     (scaled_outward_normal(pts, (ju + pts.size() - 1) % pts.size()) +
                      scaled_outward_normal(pts, ju));
    np.grad(0, j) = g.x;
    np.grad(1, j) = g.y;
  }
  np.constant.resize(m);
  np.dof_of_pi.resize(m, m);
  const Point2 shift = np.mom.centroid - xbar;
  for (Index j = 0; j < m; ++j) {
    const Point2 g{np.grad(0, j), np.grad(1, j)};
    np.constant(j) = 1.0 / static_cast<double>(m) + dot(g, shift);
    for (Index i = 0; i < m; ++i) {
      np.dof_of_pi(i, j) = np.constant(j) + dot(g, pts[static_cast<std::size_t>(i)] - np.mom.centroid);
    }
  }
  return np;
}

}  // namespace

PolygonMoments polygon_moments(std::span<const Point2> pts) {
  const CellGeometry g = checked_geometry(pts);
  PolygonMoments mom;
  mom.area = g.area;
  mom.centroid = g.centroid;
  mom.diameter = g.diameter;
  // Second moments are quadratic: the edge-midpoint rule on the centroid fan
  // is exact.
  const Point2 c = g.centroid;
  std::vector<Point2> local(pts.begin(), pts.end());
  for (auto& p : local) p = p - c;
  const Eigen::Vector3d s = detail::integrate_polygon(
      local, Point2{},
      [](Point2 x) -> Eigen::Vector3d { return {x.x * x.x, x.x * x.y, x.y * x.y}; }, 2);
  mom.xx = s(0);
  mom.xy = s(1);
  mom.yy = s(2);
  return mom;
}

DenseMatrix nodal_projector(std::span<const Point2> pts) {
  const NodalParts np = nodal_parts(pts);
  const double h = np.mom.diameter;
  const auto m = static_cast<Index>(pts.size());
  DenseMatrix p(3, m);
  p.row(0) = np.constant.transpose();
  p.row(1) = h * np.grad.row(0);
  p.row(2) = h * np.grad.row(1);
  return p;
}

LocalNodalMatrices nodal_matrices(std::span<const Point2> pts) {
  const NodalParts np = nodal_parts(pts);
  const auto m = static_cast<Index>(pts.size());
  const DenseMatrix defect = DenseMatrix::Identity(m, m) - np.dof_of_pi;
  // Tangential edge stabilization on (I - Pi): kNodalStabScale h_K sum_E (u(b) - u(a))^2 / |E|.
  DenseMatrix jump = DenseMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const double w = std::sqrt(kNodalStabScale * np.mom.diameter / norm(pts[(iu + 1) % pts.size()] - pts[iu]));
    jump(i, i) = -w;
    jump(i, (i + 1) % m) = w;
  }
  const DenseMatrix jd = jump * defect;
  const DenseMatrix stab = jd.transpose() * jd;

  LocalNodalMatrices out;
  out.stiffness = np.mom.area * np.grad.transpose() * np.grad + stab;

  Eigen::Matrix2d second;
  second << np.mom.xx, np.mom.xy, np.mom.xy, np.mom.yy;
  out.mass = np.mom.area * np.constant * np.constant.transpose() +
             np.grad.transpose() * second * np.grad + np.mom.area * stab;

  const double h = np.mom.diameter;
  out.projector.resize(3, m);
  out.projector.row(0) = np.constant.transpose();
  out.projector.row(1) = h * np.grad.row(0);
  out.projector.row(2) = h * np.grad.row(1);
  return out;
}

DenseMatrix nodal_stiffness(std::span<const Point2> pts) { return nodal_matrices(pts).stiffness; }
DenseMatrix nodal_mass(std::span<const Point2> pts) { return nodal_matrices(pts).mass; }

namespace {

struct FacetParts {
  PolygonMoments mom;
  DenseMatrix projector;  // 3 x m
  DenseMatrix dof_of_rt;  // m x 3, outward dofs of e1, e2, x - c_K
};

FacetParts facet_parts(std::span<const Point2> pts) {
  FacetParts fp;
  fp.mom = polygon_moments(pts);
  const double area = fp.mom.area;
  const double polar = fp.mom.xx + fp.mom.yy;  // int |x - c_K|^2
  if (!(polar > 0.0)) throw SingularGram("vanishing polar moment");
  const Point2 c = fp.mom.centroid;
  const auto m = static_cast<Index>(pts.size());
  auto q = [c](Point2 x) { return 0.5 * dot(x - c, x - c); };

  fp.projector.resize(3, m);
  fp.dof_of_rt.resize(m, 3);
  for (Index i = 0; i < m; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const Point2 a = pts[iu];
    const Point2 b = pts[(iu + 1) % pts.size()];
    const Point2 mid = 0.5 * (a + b);
    const Point2 nu = scaled_outward_normal(pts, iu);
    // int_K v = sum_F (v.n)_F int_F (x - c_K)
    fp.projector(0, i) = (mid.x - c.x) / area;
    fp.projector(1, i) = (mid.y - c.y) / area;
    // int_K v.(x - c_K) = -div(v) int_K q + sum_F (v.n)_F int_F q, Simpson on q.
    const double edge_q = (q(a) + 4.0 * q(mid) + q(b)) / 6.0;
    fp.projector(2, i) = (edge_q - 0.5 * polar / area) / polar;

    fp.dof_of_rt(i, 0) = nu.x;
    fp.dof_of_rt(i, 1) = nu.y;
    fp.dof_of_rt(i, 2) = dot(nu, mid - c);
  }
  return fp;
}

}  // namespace

DenseMatrix facet_projection(std::span<const Point2> pts) { return facet_parts(pts).projector; }

LocalFacetMass facet_mass(std::span<const Point2> pts) {
  const FacetParts fp = facet_parts(pts);
  const auto m = static_cast<Index>(pts.size());
  const Eigen::Vector3d gram(fp.mom.area, fp.mom.area, fp.mom.xx + fp.mom.yy);

  LocalFacetMass out;
  out.projector = fp.projector;
  out.stabilization = DenseMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const double len = norm(pts[(iu + 1) % pts.size()] - pts[iu]);
    out.stabilization(i, i) = fp.mom.diameter / len;
  }
  const DenseMatrix defect = DenseMatrix::Identity(m, m) - fp.dof_of_rt * fp.projector;
  out.mass = fp.projector.transpose() * gram.asDiagonal() * fp.projector +
             defect.transpose() * out.stabilization * defect;
  out.mass = 0.5 * (out.mass + out.mass.transpose()).eval();
  return out;
}

Vector rt0_facet_dofs(std::span<const Point2> pts, Point2 c, double gamma) {
  const CellGeometry g = checked_geometry(pts);
  Vector dofs(static_cast<Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 mid = 0.5 * (pts[i] + pts[(i + 1) % pts.size()]);
    dofs(static_cast<Index>(i)) = dot(scaled_outward_normal(pts, i), c + gamma * (mid - g.centroid));
  }
  return dofs;
}

}  // namespace vemasp
