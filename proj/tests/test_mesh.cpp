#include "vemasp/errors.hpp"
#include "vemasp/mesh.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>

using namespace vemasp;

namespace {

int euler(const PolygonalMesh& m) { return m.num_vertices() - m.num_facets() + m.num_cells(); }

double shoelace(const std::vector<Point2>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2 a = p[i];
    const Point2 b = p[(i + 1) % p.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return 0.5 * s;
}

// Interior facets see opposite signs, boundary facets exactly one cell.
void expect_consistent_signs(const PolygonalMesh& m) {
  std::vector<std::vector<int>> signs(static_cast<std::size_t>(m.num_facets()));
  for (int c = 0; c < m.num_cells(); ++c) {
    for (const FacetIncidence& fi : m.cell_facets(c)) signs[static_cast<std::size_t>(fi.facet)].push_back(fi.sign);
  }
  for (int f = 0; f < m.num_facets(); ++f) {
    const auto& s = signs[static_cast<std::size_t>(f)];
    ASSERT_GE(s.size(), 1u);
    ASSERT_LE(s.size(), 2u);
    if (s.size() == 2) EXPECT_EQ(s[0], -s[1]) << "facet " << f;
  }
}

}  // namespace

TEST(Mesh, DiamondCounts) {
  for (int n = 1; n <= 32; n *= 2) {
    const PolygonalMesh m = generate_diamond(n);
    EXPECT_EQ(m.num_vertices(), 9 * n * n + 6 * n + 1);
    EXPECT_EQ(m.num_cells(), 9 * n * n);
    EXPECT_EQ(m.num_facets(), 9 * n * n + 9 * n * n + 6 * n + 1 - 1);
    EXPECT_EQ(euler(m), 1);
  }
  EXPECT_EQ(generate_diamond(4).num_facets(), 312);
  EXPECT_EQ(generate_diamond(8).num_facets(), 1200);
  EXPECT_EQ(generate_diamond(4).num_facets() + generate_diamond(4).num_cells(), 456);
  const PolygonalMesh one = generate_diamond(1);
  EXPECT_EQ(one.num_vertices(), 16);
  EXPECT_EQ(one.num_facets(), 24);
  EXPECT_EQ(one.num_cells(), 9);
}

TEST(Mesh, DiamondCellShapes) {
  const PolygonalMesh m = generate_diamond(1);
  std::multiset<std::size_t> sizes;
  for (int c = 0; c < m.num_cells(); ++c) sizes.insert(m.cell(c).size());
  EXPECT_EQ(sizes.count(3), 4u);
  EXPECT_EQ(sizes.count(4), 1u);
  EXPECT_EQ(sizes.count(5), 4u);
}

TEST(Mesh, TriangleGrid) {
  const PolygonalMesh m1 = generate_triangle_grid(1);
  EXPECT_EQ(m1.num_cells(), 2);
  EXPECT_EQ(m1.num_facets(), 5);
  EXPECT_EQ(m1.num_vertices(), 4);
  const PolygonalMesh m2 = generate_triangle_grid(2);
  EXPECT_EQ(m2.num_cells(), 8);
  EXPECT_EQ(m2.num_vertices(), 9);
  EXPECT_EQ(m2.num_facets(), 16);
  for (int n : {1, 3, 16}) EXPECT_DOUBLE_EQ(aspect_ratio(generate_triangle_grid(n)), 4.0);
}

TEST(Mesh, FacetsSortedAndOriented) {
  const PolygonalMesh m = generate_diamond(2);
  for (int f = 0; f < m.num_facets(); ++f) {
    EXPECT_LT(m.facet(f).a, m.facet(f).b);
    if (f > 0) {
      const Facet p = m.facet(f - 1);
      const Facet q = m.facet(f);
      EXPECT_TRUE(p.a < q.a || (p.a == q.a && p.b < q.b));
    }
    const Point2 t = m.facet_tangent(f);
    const Point2 n = m.facet_normal(f);
    EXPECT_NEAR(n.x, -t.y, 1e-15);
    EXPECT_NEAR(n.y, t.x, 1e-15);
  }
  // sign +1 iff the fixed normal points away from the cell centroid
  for (int c = 0; c < m.num_cells(); ++c) {
    const Point2 cc = cell_geometry(m, c).centroid;
    for (const FacetIncidence& fi : m.cell_facets(c)) {
      const double out = dot(m.facet_normal(fi.facet), m.facet_midpoint(fi.facet) - cc);
      EXPECT_EQ(fi.sign, out > 0 ? 1 : -1);
    }
  }
  expect_consistent_signs(m);
}

TEST(Mesh, Geometry) {
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const CellGeometry g = polygon_geometry(sq);
  EXPECT_DOUBLE_EQ(g.area, 1.0);
  EXPECT_DOUBLE_EQ(g.centroid.x, 0.5);
  EXPECT_DOUBLE_EQ(g.centroid.y, 0.5);
  EXPECT_DOUBLE_EQ(g.diameter, std::sqrt(2.0));

  const std::vector<Point2> tri{{0, 0}, {1, 0}, {0, 1}};
  const CellGeometry t = polygon_geometry(tri);
  EXPECT_DOUBLE_EQ(t.area, 0.5);
  EXPECT_NEAR(t.centroid.x, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(t.centroid.y, 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(t.diameter, std::sqrt(2.0));

  const double h = 0.25;
  const std::vector<Point2> pent{{0, 0}, {h / 3, 0}, {h / 2, h / 4}, {h / 4, h / 2}, {0, h / 3}};
  EXPECT_NEAR(polygon_geometry(pent).area, 17.0 / 96.0 * h * h, 1e-16);

  const std::vector<Point2> cw{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  EXPECT_THROW(polygon_geometry(cw), NonPositiveArea);
}

TEST(Mesh, AreaMatchesMonteCarlo) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    // random convex polygon: sorted angles on a perturbed circle
    const int k = 4 + trial;
    std::vector<double> ang;
    for (int i = 0; i < k; ++i) ang.push_back(2.0 * M_PI * u(rng));
    std::sort(ang.begin(), ang.end());
    std::vector<Point2> p;
    for (double a : ang) p.push_back({0.5 + 0.4 * std::cos(a), 0.5 + 0.4 * std::sin(a)});
    const double exact = shoelace(p);
    if (exact < 1e-3) continue;
    auto inside = [&](Point2 q) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (cross(p[(i + 1) % p.size()] - p[i], q - p[i]) < 0) return false;
      }
      return true;
    };
    const int samples = 200000;
    int hits = 0;
    for (int s = 0; s < samples; ++s) hits += inside({u(rng), u(rng)}) ? 1 : 0;
    const double est = static_cast<double>(hits) / samples;
    const double se = std::sqrt(est * (1 - est) / samples);
    EXPECT_NEAR(polygon_geometry(p).area, est, 3 * se + 1e-12);
    EXPECT_NEAR(polygon_geometry(p).area, exact, 1e-14);
  }
}

TEST(Mesh, AspectRatio) {
  EXPECT_DOUBLE_EQ(aspect_ratio(generate_unit_square()), 2.0);
  for (int n : {1, 4}) EXPECT_NEAR(aspect_ratio(generate_diamond(n)), 8.0 / 3.0, 1e-12);
}

TEST(Mesh, CutUnitSquare) {
  const PolygonalMesh m = cut_with_line(generate_unit_square(), 0.5);
  EXPECT_EQ(m.num_cells(), 2);
  EXPECT_EQ(m.num_vertices(), 6);
  EXPECT_EQ(m.num_facets(), 7);
  for (int c = 0; c < 2; ++c) EXPECT_NEAR(cell_geometry(m, c).area, 0.5, 1e-15);
  EXPECT_EQ(euler(m), 1);
}

TEST(Mesh, CutThroughVertexThrows) {
  EXPECT_THROW(cut_with_line(generate_triangle_grid(4), 0.5), DegenerateCut);
  EXPECT_THROW(cut_with_line(generate_triangle_grid(4), 0.25), DegenerateCut);
}

TEST(Mesh, CutAspectRatioTracksEpsilon) {
  const PolygonalMesh bg = generate_triangle_grid(16);
  // the thin trapezoid under the line has diam ~ h and area ~ h eps
  const double h = 1.0 / 16;
  for (double eps : {1e-4, 1e-6, 1e-8}) {
    const PolygonalMesh m = cut_with_line(bg, 0.5 + eps);
    const double alpha = aspect_ratio(m);
    EXPECT_GT(alpha * eps, 0.5 * h);
    EXPECT_LT(alpha * eps, 2.0 * h);
    EXPECT_EQ(euler(m), 1);
    expect_consistent_signs(m);
  }
  EXPECT_NEAR(aspect_ratio(cut_with_line(bg, 0.5 + 1e-6)), 6.25e4, 0.01 * 6.25e4);
  EXPECT_NEAR(aspect_ratio(cut_with_line(bg, 0.5 + 1e-4)), 6.27e2, 0.01 * 6.27e2);
}

TEST(Mesh, CutConservesArea) {
  const PolygonalMesh m = cut_with_line(generate_diamond(3), 0.5 + 1e-3);
  double total = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) total += cell_geometry(m, c).area;
  EXPECT_NEAR(total, 1.0, 1e-13);
  EXPECT_TRUE(validate(m).ok());
}

TEST(Mesh, Validate) {
  const ValidationReport r = validate(generate_diamond(4));
  EXPECT_TRUE(r.ok()) << r.summary();
  EXPECT_EQ(r.euler_characteristic, 1);
  EXPECT_TRUE(r.misoriented_cells.empty());
  EXPECT_TRUE(r.nonconvex_cells.empty());

  const PolygonalMesh cut = cut_with_line(generate_triangle_grid(16), 0.5 + 1e-8);
  const ValidationReport rc = validate(cut);
  EXPECT_TRUE(rc.ok()) << rc.summary();
  EXPECT_TRUE(rc.nonmanifold_facets.empty());
  EXPECT_FALSE(rc.warnings.empty());
  EXPECT_GT(rc.aspect_ratio, kAspectRatioWarning);

  // one clockwise cell
  const PolygonalMesh bad({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 0}, {2, 1}},
                          {{0, 1, 2, 3}, {1, 2, 5, 4}});
  const ValidationReport rb = validate(bad);
  EXPECT_FALSE(rb.ok());
  EXPECT_EQ(rb.misoriented_cells, std::vector<int>{1});
}

TEST(Mesh, ConstructorRejectsBadTopology) {
  EXPECT_THROW(PolygonalMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 3}}), TopologyError);
  EXPECT_THROW(PolygonalMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}}), TopologyError);
  EXPECT_THROW(PolygonalMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 1}}), TopologyError);
}

TEST(MeshIo, RoundTrip) {
  const PolygonalMesh m = generate_diamond(2);
  EXPECT_EQ(m.num_vertices(), 49);
  EXPECT_EQ(m.num_cells(), 36);
  EXPECT_EQ(m.num_facets(), 84);
  const std::string text = format_mesh(m);
  const PolygonalMesh back = parse_mesh(text);
  EXPECT_EQ(format_mesh(back), text);
  EXPECT_EQ(back.num_facets(), 84);
  EXPECT_EQ(back.vertices(), m.vertices());
  EXPECT_EQ(back.cells(), m.cells());

  const auto path = std::filesystem::temp_directory_path() / "vemasp_roundtrip.json";
  write_mesh(cut_with_line(generate_triangle_grid(4), 0.5 + 1e-6), path);
  const PolygonalMesh cut = read_mesh(path);
  EXPECT_EQ(format_mesh(cut), format_mesh(cut_with_line(generate_triangle_grid(4), 0.5 + 1e-6)));
  std::filesystem::remove(path);
}

TEST(MeshIo, Rejects) {
  EXPECT_THROW(parse_mesh(R"({"vertices": [[0,0],[1,0],[0,1]], "cells": [[0,1,3]]})"), ParseError);
  EXPECT_THROW(parse_mesh(R"({"vertices": [[0,0],[1,0]], "cells": )"), ParseError);
  EXPECT_THROW(parse_mesh(R"({"vertices": [[0,0],[1,0],[0,1]]})"), ParseError);
  EXPECT_THROW(read_mesh("/nonexistent/mesh.json"), ParseError);
}
