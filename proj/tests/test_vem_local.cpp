#include "vemasp/errors.hpp"
#include "vemasp/vem_local.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>

using namespace vemasp;

namespace {

std::vector<std::vector<Point2>> template_cells() {
  const double h = 1.0;
  return {
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}},
      {{0, 0}, {1, 0}, {0, 1}},
      {{h / 3, 0}, {2 * h / 3, 0}, {h / 2, h / 4}},
      {{h / 2, h / 4}, {3 * h / 4, h / 2}, {h / 2, 3 * h / 4}, {h / 4, h / 2}},
      {{0, 0}, {h / 3, 0}, {h / 2, h / 4}, {h / 4, h / 2}, {0, h / 3}},
      // thin trapezoid of a cut mesh and a regular hexagon
      {{0, 0.5}, {0.0625, 0.5}, {0.0625, 0.5001}, {0.0001, 0.5001}},
      {{1, 0}, {0.5, std::sqrt(3) / 2}, {-0.5, std::sqrt(3) / 2}, {-1, 0}, {-0.5, -std::sqrt(3) / 2},
       {0.5, -std::sqrt(3) / 2}},
  };
}

Vector vertex_values(const std::vector<Point2>& p, double a, double bx, double by) {
  Vector v(static_cast<Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) v(static_cast<Index>(i)) = a + bx * p[i].x + by * p[i].y;
  return v;
}

// Exact int_K (a + b.x)(c + d.x) from the monomial moments of a triangle fan.
double exact_linear_product(const std::vector<Point2>& p, double a, Point2 b, double c, Point2 d) {
  double s = 0.0;
  const Point2 o = p[0];
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const Point2 q[3] = {o, p[i], p[i + 1]};
    const double area = 0.5 * cross(q[1] - q[0], q[2] - q[0]);
    // edge midpoint rule, exact for quadratics on a triangle
    for (int e = 0; e < 3; ++e) {
      const Point2 m = 0.5 * (q[e] + q[(e + 1) % 3]);
      s += area / 3.0 * (a + dot(b, m)) * (c + dot(d, m));
    }
  }
  return s;
}

// Rounding of the vertex data is amplified by the aspect ratio on thin cells.
double consistency_tol(const std::vector<Point2>& p) {
  const PolygonMoments mom = polygon_moments(p);
  return 1e-13 * std::max(10.0, mom.diameter * mom.diameter / mom.area);
}

double max_abs_asym(const DenseMatrix& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(VemLocal, Moments) {
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const PolygonMoments m = polygon_moments(sq);
  EXPECT_DOUBLE_EQ(m.area, 1.0);
  EXPECT_NEAR(m.xx, 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(m.yy, 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(m.xy, 0.0, 1e-15);
  const std::vector<Point2> pent = template_cells()[4];
  EXPECT_NEAR(polygon_moments(pent).area, 17.0 / 96.0, 1e-15);
}

TEST(VemLocal, NodalProjectorReproducesLinears) {
  for (const auto& p : template_cells()) {
    const DenseMatrix pi = nodal_projector(p);
    const PolygonMoments mom = polygon_moments(p);
    const double h = mom.diameter;
    const double a = 0.3, bx = -1.7, by = 2.2;
    const Eigen::Vector3d c = pi * vertex_values(p, a, bx, by);
    const double tol = consistency_tol(p);
    EXPECT_NEAR(c(0), a + bx * mom.centroid.x + by * mom.centroid.y, tol);
    EXPECT_NEAR(c(1), bx * h, tol);
    EXPECT_NEAR(c(2), by * h, tol);
    const Eigen::Vector3d one = pi * Vector::Ones(static_cast<Index>(p.size()));
    EXPECT_NEAR(one(0), 1.0, tol);
    EXPECT_NEAR(one(1), 0.0, tol);
    EXPECT_NEAR(one(2), 0.0, tol);
  }
}

TEST(VemLocal, HexagonHatConstant) {
  const auto hex = template_cells()[6];
  const DenseMatrix pi = nodal_projector(hex);
  // centroid at the origin = vertex average, so the constant part is 1/6
  EXPECT_NEAR(pi(0, 0), 1.0 / 6.0, 1e-14);
}

TEST(VemLocal, NodalStiffness) {
  const auto cells = template_cells();
  const std::vector<Point2>& sq = cells[0];
  const DenseMatrix k_sq = nodal_stiffness(sq);
  const Vector x = vertex_values(sq, 0, 1, 0);
  EXPECT_NEAR(x.dot(k_sq * x), 1.0, 1e-14);

  for (const auto& p : cells) {
    const DenseMatrix k = nodal_stiffness(p);
    EXPECT_LE(max_abs_asym(k), 1e-14);
    EXPECT_LE(k.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12 * k.cwiseAbs().maxCoeff());
    // P1 consistency: energy equals |K| |grad p|^2
    const double area = polygon_moments(p).area;
    const Vector v = vertex_values(p, 0.4, 1.3, -0.8);
    const double exact = area * (1.3 * 1.3 + 0.8 * 0.8);
    EXPECT_NEAR(v.dot(k * v), exact, consistency_tol(p) * exact);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(k);
    const Vector ev = es.eigenvalues();
    EXPECT_LT(std::abs(ev(0)), 1e-12 * ev(ev.size() - 1));
    EXPECT_GT(ev(1), 1e-10 * ev(ev.size() - 1)) << "kernel dimension must be one";
  }
}

TEST(VemLocal, NodalStabilizationIsTangentialEdgeForm) {
  // A non-linear vertex pattern on the unit square: Pi of (1,-1,1,-1) is zero,
  // so the stiffness is the stabilization alone.
  const auto sq = template_cells()[0];
  Vector q(4);
  q << 1, -1, 1, -1;
  const double expected = kNodalStabScale * std::sqrt(2.0) * 4.0 * 4.0;
  EXPECT_NEAR(q.dot(nodal_stiffness(sq) * q), expected, 1e-12);
  EXPECT_NEAR(q.dot(nodal_mass(sq) * q), expected, 1e-12);
}

TEST(VemLocal, NodalMass) {
  const auto cells = template_cells();
  const std::vector<Point2>& sq = cells[0];
  const DenseMatrix m_sq = nodal_mass(sq);
  const Vector x = vertex_values(sq, 0, 1, 0);
  EXPECT_NEAR(x.dot(m_sq * x), 1.0 / 3.0, 1e-14);
  for (const auto& p : cells) {
    const DenseMatrix m = nodal_mass(p);
    const Vector one = Vector::Ones(static_cast<Index>(p.size()));
    const double area = polygon_moments(p).area;
    EXPECT_NEAR(one.dot(m * one), area, 1e-14 * std::max(1.0, area));
    EXPECT_LE(max_abs_asym(m), 1e-14);
    const Vector v = vertex_values(p, 0.2, -0.7, 1.1);
    const double exact = exact_linear_product(p, 0.2, {-0.7, 1.1}, 0.2, {-0.7, 1.1});
    EXPECT_NEAR(v.dot(m * v), exact, 1e-12 * exact);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
    EXPECT_GT(es.eigenvalues()(0), 0.0);
  }
}

TEST(VemLocal, FacetProjection) {
  const auto cells = template_cells();
  const std::vector<Point2>& sq = cells[0];
  const CellGeometry g = polygon_geometry(sq);
  const Eigen::Vector3d e1 = facet_projection(sq) * rt0_facet_dofs(sq, {1, 0}, 0);
  EXPECT_NEAR((e1 - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-14);
  const Eigen::Vector3d xk = facet_projection(sq) * rt0_facet_dofs(sq, {0, 0}, 1);
  EXPECT_NEAR((xk - Eigen::Vector3d(0, 0, 1)).norm(), 0.0, 1e-14);
  // x_K^perp = (-(y - 1/2), x - 1/2): outward fluxes vanish on every edge
  Vector rot(4);
  for (int i = 0; i < 4; ++i) {
    const Point2 a = sq[static_cast<std::size_t>(i)];
    const Point2 b = sq[static_cast<std::size_t>((i + 1) % 4)];
    const Point2 mid = 0.5 * (a + b);
    const Point2 nu{b.y - a.y, -(b.x - a.x)};
    rot(i) = dot(nu, perp(mid - g.centroid));
  }
  EXPECT_NEAR((facet_projection(sq) * rot).norm(), 0.0, 1e-14);
}

TEST(VemLocal, FacetMassPatchTest) {
  for (const auto& p : template_cells()) {
    const LocalFacetMass fm = facet_mass(p);
    const CellGeometry g = polygon_geometry(p);
    EXPECT_LE(max_abs_asym(fm.mass), 1e-14 * fm.mass.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(fm.mass);
    EXPECT_GT(es.eigenvalues()(0), 0.0);

    const Point2 c1{0.7, -1.2}, c2{-0.3, 0.4};
    const double g1 = 0.9, g2 = -1.6;
    const Vector u = rt0_facet_dofs(p, c1, g1);
    const Vector w = rt0_facet_dofs(p, c2, g2);
    // (c1 + g1 x_K, c2 + g2 x_K) with x_K = x - c_K written as a + b.x
    const double exact = exact_linear_product(p, c1.x - g1 * g.centroid.x, {g1, 0}, c2.x - g2 * g.centroid.x, {g2, 0}) +
                         exact_linear_product(p, c1.y - g1 * g.centroid.y, {0, g1}, c2.y - g2 * g.centroid.y, {0, g2});
    EXPECT_NEAR(u.dot(fm.mass * w), exact, 1e-12 * std::abs(exact) + 1e-15);
  }
}

TEST(VemLocal, FacetMassUnitSquare) {
  const auto sq = template_cells()[0];
  const LocalFacetMass fm = facet_mass(sq);
  const Vector e1 = rt0_facet_dofs(sq, {1, 0}, 0);
  EXPECT_NEAR(e1.dot(fm.mass * e1), 1.0, 1e-14);
  const Vector xk = rt0_facet_dofs(sq, {0, 0}, 1);
  EXPECT_NEAR(xk.dot(fm.mass * xk), 1.0 / 6.0, 1e-14);
  // stabilization weights diam / |F|
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(fm.stabilization(i, i), std::sqrt(2.0));
}

TEST(VemLocal, DegenerateCells) {
  const std::vector<Point2> line{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_THROW(facet_mass(line), SingularGram);
  EXPECT_THROW(nodal_stiffness(line), SingularGram);
  const std::vector<Point2> two{{0, 0}, {1, 0}};
  EXPECT_THROW(nodal_projector(two), SingularGram);
}
