#include "cli.hpp"

#include "vemasp/errors.hpp"
#include "vemasp/experiments.hpp"
#include "vemasp/mesh.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace vemasp::cli {

namespace {

struct MeshArgs {
  std::string type;
  int n = 0;
  std::optional<double> eps;
  std::string out;
  bool validate = false;
};

struct SolveArgs {
  std::string mesh;
  std::string data = "f1";
  std::string precond = "add";
  std::string smoother = "diag";
  std::string recursion = "literal";
  double tol = 1e-8;
  int maxit = 2000;
  bool cond = false;
  bool deterministic = false;
  std::string report;
};

struct SweepArgs {
  int table = 0;
  double tol = 1e-8;
  int maxit = 2000;
  std::string smoother = "diag";
  std::string recursion = "literal";
  std::string out;
  std::string markdown;
  bool no_cond = false;
  bool deterministic = false;
  std::size_t max_meshes = 0;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", v);
  return buf;
}

MultiplicativeRecursion parse_recursion(const std::string& s) {
  if (s == "literal") return MultiplicativeRecursion::literal;
  if (s == "residual") return MultiplicativeRecursion::residual;
  throw InvalidArgument("unknown recursion \"" + s + "\" (expected literal or residual)");
}

int cmd_mesh(const MeshArgs& a, std::ostream& out) {
  MeshSpec spec;
  spec.n = a.n;
  if (a.type == "diamond") {
    spec.kind = MeshSpec::Kind::diamond;
  } else if (a.type == "triangle") {
    spec.kind = MeshSpec::Kind::triangle;
  } else {
    spec.kind = MeshSpec::Kind::cut;
    if (!a.eps) throw InvalidArgument("--type cut needs --eps");
    spec.eps = a.eps;
  }
  const PolygonalMesh mesh = build_mesh(spec);
  write_mesh(mesh, a.out);
  out << spec.label() << ": " << mesh.num_vertices() << " vertices, " << mesh.num_facets() << " facets, "
      << mesh.num_cells() << " cells, h = " << mesh.h() << ", alpha = " << sci(aspect_ratio(mesh)) << "\n";
  if (a.validate) {
    const ValidationReport rep = validate(mesh);
    out << rep.summary() << "\n";
    if (!rep.ok()) return kExitNumerical;
  }
  return kExitOk;
}

void append_report(const std::string& path, const ReportRow& row) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream f(path, std::ios::app);
  if (!f) throw InvalidArgument("cannot open report file " + path);
  if (fresh) f << csv_header() << "\n";
  f << csv_row(row) << "\n";
}

int cmd_solve(ProblemKind problem, const SolveArgs& a, std::ostream& out) {
  const MeshSpec spec = parse_mesh_spec(a.mesh);
  RunConfig cfg;
  cfg.problem = problem;
  cfg.data = a.data;
  data_library(a.data);  // reject unknown names before meshing
  cfg.smoother = parse_smoother_kind(a.smoother);
  cfg.recursion = parse_recursion(a.recursion);
  cfg.gmres.tol = a.tol;
  cfg.gmres.maxit = a.maxit;
  cfg.compute_kappa = a.cond;
  cfg.cond.estimate_above_cap = true;
  cfg.deterministic = a.deterministic;
  const PrecondKind kind = parse_precond_kind(a.precond);
  if (!(a.tol > 0.0)) throw InvalidArgument("--tol must be positive");

  const PolygonalMesh mesh = build_mesh(spec);
  const std::string suite = problem == ProblemKind::projection ? "project" : "darcy";
  const RunOutcome o = run_mesh(suite, spec, mesh, cfg, {kind}).front();
  if (!a.report.empty()) append_report(a.report, o.row);

  out << suite << ' ' << o.row.mesh << ": ndof " << o.row.ndof << ", alpha " << sci(o.row.alpha) << ", precond "
      << to_string(kind) << ", iters " << o.row.iters << " (" << to_string(o.solve.status) << ")";
  if (o.cond) {
    out << ", kappa " << sci(o.cond->kappa) << (o.cond->estimated ? " (estimate, " : " (") << o.cond->method << ")";
  } else if (a.cond) {
    out << ", kappa omitted (dimension above cap)";
  }
  out << "\n";
  return o.row.converged ? kExitOk : kExitNumerical;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  SweepOptions opts;
  opts.tol = a.tol;
  opts.maxit = a.maxit;
  opts.smoother = parse_smoother_kind(a.smoother);
  opts.recursion = parse_recursion(a.recursion);
  opts.compute_kappa = !a.no_cond;
  opts.deterministic = a.deterministic;
  opts.max_meshes = a.max_meshes;
  sweep_definition(a.table);  // validates the table number

  std::ofstream csv(a.out);
  if (!csv) throw InvalidArgument("cannot write " + a.out);
  csv << csv_header() << "\n" << std::flush;
  bool all_converged = true;
  const ExperimentReport rep = run_sweep(a.table, opts, [&](const ReportRow& row) {
    csv << csv_row(row) << "\n" << std::flush;
    all_converged = all_converged && row.converged;
    out << row.mesh << ' ' << to_string(row.precond) << ": iters " << row.iters
        << (row.kappa ? ", kappa " + sci(*row.kappa) : std::string()) << "\n";
  });
  if (!a.markdown.empty()) {
    std::ofstream md(a.markdown);
    if (!md) throw InvalidArgument("cannot write " + a.markdown);
    md << format_markdown(rep);
  }
  return all_converged ? kExitOk : kExitNumerical;
}

void add_solve_options(CLI::App* sub, SolveArgs& a) {
  sub->add_option("--mesh", a.mesh, "mesh file or generator: diamond:N, triangle:N, cut:N:eps")->required();
  sub->add_option("--data", a.data, "data set")->check(CLI::IsMember({"f1", "f2"}));
  sub->add_option("--precond", a.precond, "preconditioner")->check(CLI::IsMember({"none", "diag", "add", "mult"}));
  sub->add_option("--smoother", a.smoother, "smoother of add/mult")->check(CLI::IsMember({"diag", "stab"}));
  sub->add_option("--recursion", a.recursion, "residual update of mult")
      ->check(CLI::IsMember({"literal", "residual"}));
  sub->add_option("--tol", a.tol, "relative preconditioned residual tolerance");
  sub->add_option("--maxit", a.maxit, "GMRES iteration limit")->check(CLI::PositiveNumber);
  sub->add_flag("--cond", a.cond, "also compute the condition number");
  sub->add_flag("--deterministic", a.deterministic, "leave the timing column empty");
  sub->add_option("--report", a.report, "CSV file to append the result row to");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed virtual elements with nodal auxiliary space preconditioners", "vemasp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  MeshArgs mesh_args;
  auto* mesh = app.add_subcommand("mesh", "generate a mesh and write it as JSON");
  mesh->add_option("--type", mesh_args.type, "mesh family")
      ->required()
      ->check(CLI::IsMember({"diamond", "triangle", "cut"}));
  mesh->add_option("--N", mesh_args.n, "grid size")->required()->check(CLI::PositiveNumber);
  mesh->add_option("--eps", mesh_args.eps, "cut offset: the line is y = 0.5 + eps");
  mesh->add_option("--out", mesh_args.out, "output path")->required();
  mesh->add_flag("--validate", mesh_args.validate, "print the validation report");

  SolveArgs project_args;
  auto* project = app.add_subcommand("project", "solve the H(div) projection problem");
  add_solve_options(project, project_args);

  SolveArgs darcy_args;
  darcy_args.data = "f1";
  auto* darcy = app.add_subcommand("darcy", "solve the Darcy saddle point problem");
  add_solve_options(darcy, darcy_args);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "run one of the four experiment tables");
  sweep->add_option("--table", sweep_args.table, "1, 2 (diamond meshes) or 3, 4 (cut meshes)")
      ->required()
      ->check(CLI::Range(1, 4));
  sweep->add_option("--tol", sweep_args.tol, "GMRES tolerance");
  sweep->add_option("--maxit", sweep_args.maxit, "GMRES iteration limit")->check(CLI::PositiveNumber);
  sweep->add_option("--smoother", sweep_args.smoother, "smoother")->check(CLI::IsMember({"diag", "stab"}));
  sweep->add_option("--recursion", sweep_args.recursion, "residual update of mult")
      ->check(CLI::IsMember({"literal", "residual"}));
  sweep->add_option("--out", sweep_args.out, "CSV output")->required();
  sweep->add_option("--markdown", sweep_args.markdown, "Markdown table output");
  sweep->add_flag("--no-cond", sweep_args.no_cond, "skip condition numbers");
  sweep->add_flag("--deterministic", sweep_args.deterministic, "leave the timing column empty");
  sweep->add_option("--max-meshes", sweep_args.max_meshes, "only the first meshes of the sweep");

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version_string() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = nullptr;
    for (const CLI::App* s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return kExitUsage;
  }

  try {
    if (*mesh) return cmd_mesh(mesh_args, out);
    if (*project) return cmd_solve(ProblemKind::projection, project_args, out);
    if (*darcy) return cmd_solve(ProblemKind::darcy, darcy_args, out);
    if (*sweep) return cmd_sweep(sweep_args, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownField& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace vemasp::cli
