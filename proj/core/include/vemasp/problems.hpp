#pragma once

// Global systems on a polygonal mesh.
//
// projection:  A u = b,  A = M_h + D^T diag(|K|) D
// darcy:       [ M_u  -B^T ] [u]   [b_f]
//              [ -B    0   ] [p] = [b_g],   B[K, F] = sigma_{K,F}

#include "vemasp/complex_ops.hpp"
#include "vemasp/fields.hpp"
#include "vemasp/linalg.hpp"
#include "vemasp/mesh.hpp"

#include <string>
#include <vector>

namespace vemasp {

enum class ProblemKind { projection, darcy };

struct AssembledSystem {
  ProblemKind kind = ProblemKind::projection;
  SparseMatrix matrix;
  Vector rhs;
  DofMap dofs;
  Index facet_block = 0;  // leading block size
  Index cell_block = 0;   // trailing block size (0 for projection)

  Index size() const { return matrix.rows(); }
};

/// Facet-space VEM mass matrix M_h (cell blocks of facet_mass, sign-flipped).
SparseMatrix assemble_facet_mass(const PolygonalMesh& mesh);
/// Stabilization part of M_h alone.
SparseMatrix assemble_facet_stabilization(const PolygonalMesh& mesh);
/// diag(|K|).
Vector cell_areas(const PolygonalMesh& mesh);

SparseMatrix assemble_projection(const PolygonalMesh& mesh);
/// b_i = sum_K int_K f . (Pi b_i).
Vector assemble_rhs_projection(const PolygonalMesh& mesh, const VectorField& f);
AssembledSystem assemble_projection_system(const PolygonalMesh& mesh, const VectorField& f);

/// B[K, F] = sigma_{K,F}.
SparseMatrix assemble_darcy_coupling(const PolygonalMesh& mesh);
/// b_K = int_K g.
Vector assemble_rhs_cells(const PolygonalMesh& mesh, const ScalarField& g);
AssembledSystem assemble_darcy(const PolygonalMesh& mesh, const VectorField& f, const ScalarField& g);

enum class Arity { scalar, vector };

SparseMatrix assemble_nodal_stiffness(const PolygonalMesh& mesh);
SparseMatrix assemble_nodal_mass(const PolygonalMesh& mesh);
/// scalar: stiffness + mass. vector: two copies, component-major.
SparseMatrix assemble_nodal_h1(const PolygonalMesh& mesh, Arity arity);

struct FieldPair {
  std::string name;
  VectorField f;
  ScalarField g;
};

/// f1 = -(2 pi cos 2pi x sin 4pi y, 4 pi cos 4pi y sin 2pi x),
/// g1 = -40 pi^2 cos 2pi x sin 4pi y,
/// f2 = (cos x sinh y, sin x cosh y), g2 = 0.
/// Names: "f1", "f2" (data sets) and "g1", "g2". Throws UnknownField.
VectorField vector_field(const std::string& name);
ScalarField scalar_field(const std::string& name);
/// The data set paired with "f1" is g1, with "f2" is g2.
FieldPair data_library(const std::string& name);
std::vector<std::string> data_names();

}  // namespace vemasp
