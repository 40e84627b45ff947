#pragma once

// Global dof numbering and the discrete 2D de Rham operators
//
//   nodes --curl--> facets --div--> cells
//
// Node dofs are vertex values, facet dofs are fluxes int_F v.n with the
// mesh's fixed facet normal, cell dofs are cell averages.

#include "vemasp/fields.hpp"
#include "vemasp/linalg.hpp"
#include "vemasp/mesh.hpp"

#include <string>
#include <vector>

namespace vemasp {

struct DofMap {
  Index nodes = 0;
  Index facets = 0;
  Index cells = 0;

  static DofMap of(const PolygonalMesh& mesh) {
    return {mesh.num_vertices(), mesh.num_facets(), mesh.num_cells()};
  }
};

/// C[F, b] = +1, C[F, a] = -1 for the facet a -> b.
SparseMatrix curl_matrix(const PolygonalMesh& mesh);

/// D[K, F] = sigma_{K,F} / |K|.
SparseMatrix div_matrix(const PolygonalMesh& mesh);

/// Facet dofs of a componentwise nodal vector field (x components first,
/// then y components), assuming linear traces along each facet.
SparseMatrix transfer_matrix(const PolygonalMesh& mesh);

/// dof_F = int_F v.n by Gauss quadrature exact for degree `order`.
Vector interpolate_facet(const PolygonalMesh& mesh, const VectorField& v, int order = 9);
/// Vertex values.
Vector interpolate_nodal(const PolygonalMesh& mesh, const ScalarField& v);
/// Cell averages.
Vector interpolate_cell(const PolygonalMesh& mesh, const ScalarField& v, int order = 5);

/// Scalar field together with its rotated gradient curl v = (-dy v, dx v).
struct PotentialField {
  std::string name;
  ScalarField value;
  VectorField curl;
};

/// The potentials {x, y, xy, sin(pi x) sin(pi y)} used for commuting checks.
std::vector<PotentialField> commuting_test_potentials();

struct ComplexReport {
  double max_div_curl = 0.0;  // max |(D C)_ij|
  bool div_curl_exact_zero = false;
  Index rank_curl = -1;       // -1 when skipped above the dense limit
  Index rank_div = -1;
  Index kernel_div = -1;      // #facets - rank(D)
  double commuting_error = 0.0;  // max over test potentials, infinity norm
  Index nodes = 0;
  Index facets = 0;
  Index cells = 0;
  bool dense_checks = false;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Facet count above which the rank checks fall back to the Euler count.
inline constexpr Index kDenseRankLimit = 5000;

ComplexReport verify_complex(const PolygonalMesh& mesh, double commuting_tol = 1e-10);

}  // namespace vemasp
