#include "vemasp/errors.hpp"
#include "vemasp/mesh.hpp"

#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace vemasp {

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) {
    throw InvalidArgument(std::string(what) + ": N must be >= 1, got " + std::to_string(n));
  }
}

// Sub-cell template on a 12 x 12 integer lattice per Cartesian cell: third
// points on the sides, the diamond at the quarter points.
using LatticePoint = std::array<int, 2>;
const std::array<std::vector<LatticePoint>, 9> kDiamondTemplate = {{
    {{6, 3}, {9, 6}, {6, 9}, {3, 6}},                  // diamond
    {{4, 0}, {8, 0}, {6, 3}},                          // bottom triangle
    {{12, 4}, {12, 8}, {9, 6}},                        // right triangle
    {{8, 12}, {4, 12}, {6, 9}},                        // top triangle
    {{0, 8}, {0, 4}, {3, 6}},                          // left triangle
    {{0, 0}, {4, 0}, {6, 3}, {3, 6}, {0, 4}},          // lower-left pentagon
    {{8, 0}, {12, 0}, {12, 4}, {9, 6}, {6, 3}},        // lower-right pentagon
    {{12, 8}, {12, 12}, {8, 12}, {6, 9}, {9, 6}},      // upper-right pentagon
    {{4, 12}, {0, 12}, {0, 8}, {3, 6}, {6, 9}},        // upper-left pentagon
}};

}  // namespace

PolygonalMesh generate_diamond(int n) {
  require_positive(n, "generate_diamond");
  std::map<std::pair<int, int>, int> ids;
  std::vector<Point2> vertices;
  std::vector<std::vector<int>> cells;
  cells.reserve(static_cast<std::size_t>(9 * n * n));
  const double scale = 1.0 / (12.0 * n);

  auto vertex_id = [&](int gx, int gy) {
    auto [it, inserted] = ids.try_emplace({gy, gx}, static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back({gx * scale, gy * scale});
    return it->second;
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (const auto& shape : kDiamondTemplate) {
        std::vector<int> cyc;
        cyc.reserve(shape.size());
        for (const auto& p : shape) cyc.push_back(vertex_id(12 * i + p[0], 12 * j + p[1]));
        cells.push_back(std::move(cyc));
      }
    }
  }
  return PolygonalMesh(std::move(vertices), std::move(cells));
}

PolygonalMesh generate_triangle_grid(int n) {
  require_positive(n, "generate_triangle_grid");
  std::vector<Point2> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    }
  }
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::vector<int>> cells;
  cells.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return PolygonalMesh(std::move(vertices), std::move(cells));
}

PolygonalMesh generate_unit_square() {
  return PolygonalMesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
}

PolygonalMesh cut_with_line(const PolygonalMesh& mesh, double y0) {
  if (!(y0 > 0.0 && y0 < 1.0)) {
    std::ostringstream os;
    os << "cut_with_line: y0 = " << y0 << " is not strictly inside (0, 1)";
    throw InvalidArgument(os.str());
  }
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (std::abs(mesh.vertex(v).y - y0) < kCutTolerance) {
      std::ostringstream os;
      os << "cut_with_line: vertex " << v << " lies on y = " << y0 << "; perturb the line";
      throw DegenerateCut(os.str());
    }
  }

  std::vector<Point2> vertices = mesh.vertices();
  std::vector<std::vector<int>> cells;
  cells.reserve(static_cast<std::size_t>(mesh.num_cells()) + 64);
  std::map<int, int> cut_vertex;  // facet -> new vertex

  auto crossing = [&](int f) {
    auto [it, inserted] = cut_vertex.try_emplace(f, static_cast<int>(vertices.size()));
    if (inserted) {
      const Facet& e = mesh.facet(f);
      const Point2 a = mesh.vertex(e.a);
      const Point2 b = mesh.vertex(e.b);
      const double t = (y0 - a.y) / (b.y - a.y);
      vertices.push_back({a.x + t * (b.x - a.x), y0});
    }
    return it->second;
  };

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto cyc = mesh.cell(c);
    const auto inc = mesh.cell_facets(c);
    const std::size_t m = cyc.size();
    std::vector<int> below;
    std::vector<int> above;
    int crossings = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const bool lo = mesh.vertex(cyc[i]).y < y0;
      const bool next_lo = mesh.vertex(cyc[(i + 1) % m]).y < y0;
      (lo ? below : above).push_back(cyc[i]);
      if (lo != next_lo) {
        const int v = crossing(inc[i].facet);
        below.push_back(v);
        above.push_back(v);
        ++crossings;
      }
    }
    if (crossings == 0) {
      cells.emplace_back(cyc.begin(), cyc.end());
    } else if (crossings == 2) {
      cells.push_back(std::move(below));
      cells.push_back(std::move(above));
    } else {
      throw InvalidArgument("cut_with_line: cell " + std::to_string(c) +
                            " is crossed more than twice (nonconvex cell)");
    }
  }
  return PolygonalMesh(std::move(vertices), std::move(cells));
}

}  // namespace vemasp
