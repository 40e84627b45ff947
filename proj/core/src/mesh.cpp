#include "vemasp/mesh.hpp"

#include "vemasp/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace vemasp {

PolygonalMesh::PolygonalMesh(std::vector<Point2> vertices, std::vector<std::vector<int>> cells)
    : vertices_(std::move(vertices)), cells_(std::move(cells)) {
  const int nv = num_vertices();
  std::map<std::pair<int, int>, int> facet_ids;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& cyc = cells_[c];
    if (cyc.size() < 3) {
      throw TopologyError("cell " + std::to_string(c) + " has fewer than 3 vertices");
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cyc[i] < 0 || cyc[i] >= nv) {
        throw TopologyError("cell " + std::to_string(c) + " references vertex " +
                            std::to_string(cyc[i]) + " outside [0, " + std::to_string(nv) + ")");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (cyc[i] == cyc[j]) {
          throw TopologyError("cell " + std::to_string(c) + " repeats vertex " + std::to_string(cyc[i]));
        }
      }
      const int u = cyc[i];
      const int w = cyc[(i + 1) % cyc.size()];
      facet_ids.emplace(std::minmax(u, w), 0);
    }
  }

  facets_.reserve(facet_ids.size());
  int next = 0;
  for (auto& [key, id] : facet_ids) {
    id = next++;
    facets_.push_back({key.first, key.second});
    if (vertices_[key.first] == vertices_[key.second]) {
      throw TopologyError("facet (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                          ") has zero length");
    }
  }

  cell_facets_.resize(cells_.size());
  facet_cells_.resize(facets_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& cyc = cells_[c];
    auto& inc = cell_facets_[c];
    inc.reserve(cyc.size());
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const int u = cyc[i];
      const int w = cyc[(i + 1) % cyc.size()];
      const int f = facet_ids.at(std::minmax(u, w));
      // Traversing a -> b leaves the normal on the left, i.e. inside a CCW cell.
      inc.push_back({f, u < w ? -1 : +1});
      facet_cells_[static_cast<std::size_t>(f)].push_back(static_cast<int>(c));
    }
  }

  for (int c = 0; c < num_cells(); ++c) {
    h_ = std::max(h_, polygon_diameter(cell_points(c)));
  }
}

std::vector<Point2> PolygonalMesh::cell_points(int c) const {
  std::vector<Point2> pts;
  const auto cyc = cell(c);
  pts.reserve(cyc.size());
  for (int v : cyc) pts.push_back(vertex(v));
  return pts;
}

double PolygonalMesh::facet_length(int f) const {
  const Facet& e = facet(f);
  return norm(vertex(e.b) - vertex(e.a));
}

Point2 PolygonalMesh::facet_midpoint(int f) const {
  const Facet& e = facet(f);
  return 0.5 * (vertex(e.a) + vertex(e.b));
}

Point2 PolygonalMesh::facet_tangent(int f) const {
  const Facet& e = facet(f);
  const Point2 d = vertex(e.b) - vertex(e.a);
  return (1.0 / norm(d)) * d;
}

Point2 PolygonalMesh::facet_normal(int f) const { return perp(facet_tangent(f)); }

double polygon_diameter(std::span<const Point2> pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      d = std::max(d, norm(pts[i] - pts[j]));
    }
  }
  return d;
}

CellGeometry polygon_geometry(std::span<const Point2> pts) {
  // Coordinates relative to the first vertex keep slivers of width ~1e-8
  // free of cancellation.
  const Point2 o = pts[0];
  double twice_area = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 p = pts[i] - o;
    const Point2 q = pts[(i + 1) % pts.size()] - o;
    const double w = cross(p, q);
    twice_area += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  CellGeometry g;
  g.area = 0.5 * twice_area;
  g.diameter = polygon_diameter(pts);
  if (!(g.area > 1e-15 * g.diameter * g.diameter)) {
    std::ostringstream os;
    os << "polygon area " << g.area << " is not positive (clockwise or degenerate cell)";
    throw NonPositiveArea(os.str());
  }
  g.centroid = o + Point2{cx / (3.0 * twice_area), cy / (3.0 * twice_area)};
  return g;
}

CellGeometry cell_geometry(const PolygonalMesh& mesh, int cell) {
  if (cell < 0 || cell >= mesh.num_cells()) {
    throw InvalidArgument("cell index " + std::to_string(cell) + " out of range");
  }
  try {
    return polygon_geometry(mesh.cell_points(cell));
  } catch (const NonPositiveArea& e) {
    throw NonPositiveArea("cell " + std::to_string(cell) + ": " + e.what());
  }
}

double aspect_ratio(const PolygonalMesh& mesh) {
  double alpha = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    alpha = std::max(alpha, g.diameter * g.diameter / g.area);
  }
  return alpha;
}

namespace {

double signed_twice_area(std::span<const Point2> pts) {
  const Point2 o = pts[0];
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s += cross(pts[i] - o, pts[(i + 1) % pts.size()] - o);
  }
  return s;
}

bool strictly_convex(std::span<const Point2> pts) {
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 e0 = pts[i] - pts[(i + m - 1) % m];
    const Point2 e1 = pts[(i + 1) % m] - pts[i];
    if (!(cross(e0, e1) > 1e-12 * norm(e0) * norm(e1))) return false;
  }
  return true;
}

}  // namespace

ValidationReport validate(const PolygonalMesh& mesh) {
  ValidationReport r;
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto pts = mesh.cell_points(c);
    const double a2 = signed_twice_area(pts);
    const double d = polygon_diameter(pts);
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
    if (!(a2 > 2e-15 * d * d)) {
      r.misoriented_cells.push_back(c);
      continue;
    }
    r.aspect_ratio = std::max(r.aspect_ratio, 2.0 * d * d / a2);
    if (!strictly_convex(pts)) r.nonconvex_cells.push_back(c);
  }
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const auto cells = mesh.facet_cells(f);
    bool bad = cells.empty() || cells.size() > 2;
    if (cells.size() == 2) {
      int signs = 0;
      for (int c : cells) {
        for (const auto& inc : mesh.cell_facets(c)) {
          if (inc.facet == f) signs += inc.sign;
        }
      }
      bad = signs != 0;
    }
    if (bad) r.nonmanifold_facets.push_back(f);
  }
  r.euler_characteristic = mesh.num_vertices() - mesh.num_facets() + mesh.num_cells();
  r.diameter_ratio = mesh.num_cells() > 0 ? dmax / dmin : 0.0;

  auto count = [](const char* what, std::size_t n) {
    return std::to_string(n) + " " + what;
  };
  if (!r.misoriented_cells.empty()) {
    r.errors.push_back(count("cells are clockwise or degenerate", r.misoriented_cells.size()));
  }
  if (!r.nonconvex_cells.empty()) {
    r.errors.push_back(count("cells are not strictly convex", r.nonconvex_cells.size()));
  }
  if (!r.nonmanifold_facets.empty()) {
    r.errors.push_back(count("facets are not manifold", r.nonmanifold_facets.size()));
  }
  if (r.euler_characteristic != 1) {
    r.errors.push_back("Euler characteristic is " + std::to_string(r.euler_characteristic) +
                       ", expected 1");
  }
  if (r.aspect_ratio > kAspectRatioWarning) {
    std::ostringstream os;
    os << "aspect ratio " << r.aspect_ratio << " exceeds " << kAspectRatioWarning
       << "; shape regularity does not hold";
    r.warnings.push_back(os.str());
  }
  if (r.diameter_ratio > 100.0) {
    std::ostringstream os;
    os << "cell diameters vary by a factor " << r.diameter_ratio << "; quasi-uniformity does not hold";
    r.warnings.push_back(os.str());
  }
  return r;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << "euler=" << euler_characteristic << " aspect_ratio=" << aspect_ratio
     << " diameter_ratio=" << diameter_ratio << " status=" << (ok() ? "ok" : "FAILED") << '\n';
  for (const auto& e : errors) os << "error: " << e << '\n';
  for (const auto& w : warnings) os << "warning: " << w << '\n';
  return os.str();
}

}  // namespace vemasp
