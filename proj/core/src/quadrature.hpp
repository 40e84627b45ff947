#pragma once

// Quadrature rules shared by the assembly routines.

#include "vemasp/errors.hpp"
#include "vemasp/mesh.hpp"

#include <array>
#include <span>
#include <string>

namespace vemasp::detail {

struct QuadPoint1D {
  double s;  // in [0, 1]
  double w;  // sums to 1
};

/// Gauss-Legendre rule on [0, 1] exact for polynomials of degree `order`.
inline std::span<const QuadPoint1D> gauss_rule(int order) {
  static constexpr std::array<QuadPoint1D, 1> g1{{{0.5, 1.0}}};
  static constexpr std::array<QuadPoint1D, 2> g2{{
      {0.21132486540518711775, 0.5},
      {0.78867513459481288225, 0.5},
  }};
  static constexpr std::array<QuadPoint1D, 3> g3{{
      {0.11270166537925831148, 5.0 / 18.0},
      {0.5, 8.0 / 18.0},
      {0.88729833462074168852, 5.0 / 18.0},
  }};
  static constexpr std::array<QuadPoint1D, 4> g4{{
      {0.06943184420297371239, 0.17392742256872692869},
      {0.33000947820757186760, 0.32607257743127307131},
      {0.66999052179242813240, 0.32607257743127307131},
      {0.93056815579702628761, 0.17392742256872692869},
  }};
  static constexpr std::array<QuadPoint1D, 5> g5{{
      {0.04691007703066800360, 0.11846344252809454376},
      {0.23076534494715845448, 0.23931433524968323402},
      {0.5, 0.28444444444444444444},
      {0.76923465505284154552, 0.23931433524968323402},
      {0.95308992296933199640, 0.11846344252809454376},
  }};
  if (order <= 1) return g1;
  if (order <= 3) return g2;
  if (order <= 5) return g3;
  if (order <= 7) return g4;
  if (order <= 9) return g5;
  throw InvalidArgument("quadrature order " + std::to_string(order) + " is not supported");
}

struct QuadPointTri {
  double l1, l2, l3;  // barycentric
  double w;           // sums to 1
};

/// Symmetric triangle rule exact for degree `order` (edge midpoints for
/// order <= 2, the 7-point degree-5 rule otherwise).
inline std::span<const QuadPointTri> triangle_rule(int order) {
  static constexpr std::array<QuadPointTri, 3> t2{{
      {0.5, 0.5, 0.0, 1.0 / 3.0},
      {0.0, 0.5, 0.5, 1.0 / 3.0},
      {0.5, 0.0, 0.5, 1.0 / 3.0},
  }};
  constexpr double a1 = 0.05971587178976982045;
  constexpr double b1 = 0.47014206410511508977;
  constexpr double w1 = 0.13239415278850618074;
  constexpr double a2 = 0.79742698535308732240;
  constexpr double b2 = 0.10128650732345633880;
  constexpr double w2 = 0.12593918054482715260;
  static constexpr std::array<QuadPointTri, 7> t5{{
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.225},
      {a1, b1, b1, w1},
      {b1, a1, b1, w1},
      {b1, b1, a1, w1},
      {a2, b2, b2, w2},
      {b2, a2, b2, w2},
      {b2, b2, a2, w2},
  }};
  if (order <= 2) return t2;
  if (order <= 5) return t5;
  throw InvalidArgument("triangle quadrature order " + std::to_string(order) + " is not supported");
}

/// Integral of f over the segment [a, b].
template <class F>
auto integrate_segment(Point2 a, Point2 b, F&& f, int order) {
  const double len = norm(b - a);
  auto rule = gauss_rule(order);
  auto acc = rule[0].w * f(a + rule[0].s * (b - a));
  for (std::size_t q = 1; q < rule.size(); ++q) acc = acc + rule[q].w * f(a + rule[q].s * (b - a));
  return len * acc;
}

/// Integral of f over a convex polygon by a fan of triangles from `center`.
template <class F>
auto integrate_polygon(std::span<const Point2> pts, Point2 center, F&& f, int order) {
  auto rule = triangle_rule(order);
  using Value = decltype(f(center));
  auto term = [&](std::size_t i, const QuadPointTri& qp) -> Value {
    const Point2 p = pts[i];
    const Point2 q = pts[(i + 1) % pts.size()];
    const double area = 0.5 * cross(p - center, q - center);
    return (area * qp.w) * f(qp.l1 * center + qp.l2 * p + qp.l3 * q);
  };
  // Seeded with the first term: value-initialized Eigen vectors hold garbage.
  Value acc = term(0, rule[0]);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = i == 0 ? 1 : 0; k < rule.size(); ++k) acc = acc + term(i, rule[k]);
  }
  return acc;
}

}  // namespace vemasp::detail
