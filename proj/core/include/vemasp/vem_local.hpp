#pragma once

// Per-cell matrices of the lowest-order virtual element spaces.
//
// All routines take the cell as its counterclockwise vertex cycle. Facet
// quantities are expressed in *outward* facet dofs: entry i is the outward
// flux through the edge joining vertices i and i+1. The global assembly flips
// signs with the mesh's facet orientation.

#include "vemasp/linalg.hpp"
#include "vemasp/mesh.hpp"

#include <span>

namespace vemasp {

/// Exact integrals of the monomials of degree <= 2 centered at the centroid.
struct PolygonMoments {
  double area = 0.0;
  Point2 centroid;
  double xx = 0.0;  // int (x - cx)^2
  double xy = 0.0;  // int (x - cx)(y - cy)
  double yy = 0.0;  // int (y - cy)^2
  double diameter = 0.0;
};

PolygonMoments polygon_moments(std::span<const Point2> pts);

struct LocalNodalMatrices {
  DenseMatrix stiffness;  // N_v x N_v
  DenseMatrix mass;       // N_v x N_v
  /// 3 x N_v coefficients of the projection of each vertex basis function on
  /// the scaled monomials {1, (x - c_K)/h_K, (y - c_K)/h_K}.
  DenseMatrix projector;
};

/// Gradient part from the boundary integral of the edgewise linear trace,
/// constant part fixed by matching the vertex average.
DenseMatrix nodal_projector(std::span<const Point2> pts);
/// Stabilization on (I - Pi) is kNodalStabScale diam(K) sum_E (u(b) - u(a))^2 / |E|,
/// the nodal counterpart of the facet form below (times |K| for the mass).
inline constexpr double kNodalStabScale = 0.25;
DenseMatrix nodal_stiffness(std::span<const Point2> pts);
DenseMatrix nodal_mass(std::span<const Point2> pts);
LocalNodalMatrices nodal_matrices(std::span<const Point2> pts);

struct LocalFacetMass {
  DenseMatrix mass;           // N_F x N_F
  DenseMatrix projector;      // 3 x N_F: coefficients on {e1, e2, x - c_K}
  DenseMatrix stabilization;  // N_F x N_F, the form diam(K) sum_F dof_F^2 / |F|
};

/// L2 projection of the facet space onto span{e1, e2, x - c_K}.
DenseMatrix facet_projection(std::span<const Point2> pts);
LocalFacetMass facet_mass(std::span<const Point2> pts);

/// Outward facet dofs of the field c + gamma (x - c_K).
Vector rt0_facet_dofs(std::span<const Point2> pts, Point2 c, double gamma);

}  // namespace vemasp
