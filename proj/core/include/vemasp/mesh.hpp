#pragma once

#include <cmath>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace vemasp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2, Point2) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
/// Counterclockwise rotation by pi/2.
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }

/// Facet between vertices a < b; tangent points a -> b.
struct Facet {
  int a = 0;
  int b = 0;
  friend bool operator==(Facet, Facet) = default;
};

/// Facet of a cell together with sign +1 iff the facet normal points out of
/// the cell.
struct FacetIncidence {
  int facet = 0;
  int sign = 1;
};

/// Immutable polygonal tessellation of a planar domain.
///
/// Facets are derived from the cell cycles: every unordered vertex pair that
/// appears as a cell edge becomes one facet (a < b), and facets are numbered
/// in lexicographic order of (a, b). `cell_facets(c)[i]` is the facet joining
/// cell vertices i and i+1. The facet normal is the tangent rotated by +90
/// degrees, so for a counterclockwise cell it points inward on edges
/// traversed a -> b.
class PolygonalMesh {
 public:
  PolygonalMesh() = default;
  /// Throws TopologyError on out-of-range indices, cells with fewer than
  /// three vertices, repeated vertices within a cell or zero-length facets.
  PolygonalMesh(std::vector<Point2> vertices, std::vector<std::vector<int>> cells);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_facets() const { return static_cast<int>(facets_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }

  Point2 vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  const Facet& facet(int f) const { return facets_[static_cast<std::size_t>(f)]; }
  std::span<const int> cell(int c) const { return cells_[static_cast<std::size_t>(c)]; }
  std::span<const FacetIncidence> cell_facets(int c) const {
    return cell_facets_[static_cast<std::size_t>(c)];
  }
  /// Cells adjacent to a facet (one or two for a manifold mesh).
  std::span<const int> facet_cells(int f) const { return facet_cells_[static_cast<std::size_t>(f)]; }

  std::vector<Point2> cell_points(int c) const;

  double facet_length(int f) const;
  Point2 facet_midpoint(int f) const;
  Point2 facet_tangent(int f) const;
  Point2 facet_normal(int f) const;

  /// Largest cell diameter.
  double h() const { return h_; }

 private:
  std::vector<Point2> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<int>> cells_;
  std::vector<std::vector<FacetIncidence>> cell_facets_;
  std::vector<std::vector<int>> facet_cells_;
  double h_ = 0.0;
};

struct CellGeometry {
  double area = 0.0;
  Point2 centroid;
  double diameter = 0.0;
};

/// Shoelace area, centroid and max pairwise vertex distance of a polygon
/// given counterclockwise. Throws NonPositiveArea for clockwise or degenerate
/// polygons.
CellGeometry polygon_geometry(std::span<const Point2> pts);
CellGeometry cell_geometry(const PolygonalMesh& mesh, int cell);

double polygon_diameter(std::span<const Point2> pts);

/// max over cells of diam(K)^2 / |K|.
double aspect_ratio(const PolygonalMesh& mesh);

struct ValidationReport {
  std::vector<int> misoriented_cells;
  std::vector<int> nonconvex_cells;
  std::vector<int> nonmanifold_facets;
  int euler_characteristic = 0;
  double diameter_ratio = 0.0;  // max diam / min diam
  double aspect_ratio = 0.0;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
  std::string summary() const;
};

/// Aspect ratio above which mesh regularity is reported as violated.
inline constexpr double kAspectRatioWarning = 100.0;

ValidationReport validate(const PolygonalMesh& mesh);

// Generators on the unit square.

/// N x N Cartesian cells, each split into one diamond, four side triangles
/// and four corner pentagons.
PolygonalMesh generate_diamond(int n);
/// N x N squares, each split along the diagonal from its lower-left to its
/// upper-right corner.
PolygonalMesh generate_triangle_grid(int n);
/// Single unit square cell.
PolygonalMesh generate_unit_square();

/// Tolerance below which a vertex is considered to lie on the cut line.
inline constexpr double kCutTolerance = 1e-14;

/// Splits every cell crossed by the horizontal line y = y0, inserting new
/// vertices where the line crosses facets. Throws DegenerateCut if a vertex
/// lies on the line.
PolygonalMesh cut_with_line(const PolygonalMesh& mesh, double y0);

// JSON mesh files: {"vertices": [[x,y],...], "cells": [[i0,i1,...],...]}

PolygonalMesh read_mesh(const std::filesystem::path& path);
PolygonalMesh parse_mesh(const std::string& text);
void write_mesh(const PolygonalMesh& mesh, const std::filesystem::path& path);
std::string format_mesh(const PolygonalMesh& mesh);

}  // namespace vemasp
