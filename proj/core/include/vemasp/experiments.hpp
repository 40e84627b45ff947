#pragma once

// Experiment drivers: one solve per (mesh, preconditioner), and the four
// sweeps over mesh size and aspect ratio. Output is CSV plus a Markdown
// pivot of the same rows.

#include "vemasp/krylov.hpp"
#include "vemasp/mesh.hpp"
#include "vemasp/precond.hpp"
#include "vemasp/problems.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vemasp {

/// "diamond:N", "triangle:N", "cut:N:eps" (triangle grid cut at y = 0.5 + eps),
/// anything else is a mesh file path.
struct MeshSpec {
  enum class Kind { diamond, triangle, cut, file };
  Kind kind = Kind::diamond;
  int n = 0;
  std::optional<double> eps;
  std::string path;

  std::string label() const;
};

/// Throws InvalidArgument on malformed generator strings.
MeshSpec parse_mesh_spec(const std::string& text);
PolygonalMesh build_mesh(const MeshSpec& spec);

struct RunConfig {
  ProblemKind problem = ProblemKind::projection;
  std::string data = "f1";
  SmootherKind smoother = SmootherKind::diag;
  MultiplicativeRecursion recursion = MultiplicativeRecursion::literal;
  GmresOptions gmres;
  bool compute_kappa = false;
  ConditionOptions cond;
  /// Leave the timing column empty so reports are bit-reproducible.
  bool deterministic = false;
};

/// One CSV row.
struct ReportRow {
  std::string suite;
  std::string mesh;
  int n = 0;
  std::optional<double> eps;
  Index ndof = 0;
  double alpha = 0.0;
  PrecondKind precond = PrecondKind::none;
  SmootherKind smoother = SmootherKind::diag;
  double tol = 0.0;
  std::optional<double> kappa;  // empty above the cap or when not requested
  bool kappa_estimated = false;
  int iters = 0;
  bool converged = false;
  std::optional<double> seconds;
};

struct RunOutcome {
  ReportRow row;
  SolveResult solve;
  std::optional<ConditionResult> cond;
};

/// Assembles the system once and runs every requested preconditioner on it.
std::vector<RunOutcome> run_mesh(const std::string& suite, const MeshSpec& spec, const PolygonalMesh& mesh,
                                 const RunConfig& config, const std::vector<PrecondKind>& kinds);

struct SweepDefinition {
  int table = 1;
  ProblemKind problem = ProblemKind::projection;
  std::string data;
  std::vector<MeshSpec> meshes;
  /// Krylov estimates above the cap are acceptable for this table.
  bool estimate_above_cap = false;
};

/// Background grid size of the cut-mesh sweeps.
inline constexpr int kCutBackgroundN = 16;

/// Tables 1/2: diamond N in {4, 8, 16, 32}. Tables 3/4: triangle grid
/// N = kCutBackgroundN, uncut and cut at eps in {1e-2, 1e-4, 1e-6, 1e-8}.
SweepDefinition sweep_definition(int table);

struct SweepOptions {
  double tol = 1e-8;
  int maxit = 2000;
  SmootherKind smoother = SmootherKind::diag;
  MultiplicativeRecursion recursion = MultiplicativeRecursion::literal;
  bool compute_kappa = true;
  bool deterministic = false;
  Index cap = dense_cap_from_env();
  /// Restrict to the first `max_meshes` meshes of the sweep (0 = all).
  std::size_t max_meshes = 0;
};

struct ExperimentReport {
  int table = 0;
  double tol = 0.0;
  SmootherKind smoother = SmootherKind::diag;
  std::string timestamp;
  std::string version;
  std::vector<ReportRow> rows;
};

/// Runs the sweep; `on_row` sees every row as soon as it exists.
ExperimentReport run_sweep(int table, const SweepOptions& opts,
                           const std::function<void(const ReportRow&)>& on_row = {});

std::string csv_header();
std::string csv_row(const ReportRow& row);
std::string format_markdown(const ExperimentReport& report);

std::string version_string();

}  // namespace vemasp
