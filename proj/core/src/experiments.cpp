#include "vemasp/experiments.hpp"

#include "vemasp/errors.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <map>
#include <sstream>

#ifndef VEMASP_VERSION
#define VEMASP_VERSION "0.0.0"
#endif

namespace vemasp {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int parse_positive(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || v < 1) throw InvalidArgument(what + ": expected a positive integer, got \"" + s + "\"");
  return v;
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw InvalidArgument(what + ": expected a number, got \"" + s + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

std::string MeshSpec::label() const {
  switch (kind) {
    case Kind::diamond: return "diamond:" + std::to_string(n);
    case Kind::triangle: return "triangle:" + std::to_string(n);
    case Kind::cut: return "cut:" + std::to_string(n) + ":" + fmt("%g", eps.value_or(0.0));
    case Kind::file: return path;
  }
  return path;
}

MeshSpec parse_mesh_spec(const std::string& text) {
  const auto parts = split(text, ':');
  MeshSpec spec;
  if (parts.empty()) throw InvalidArgument("empty mesh specification");
  const std::string& head = parts[0];
  if (head == "diamond" || head == "triangle") {
    if (parts.size() != 2) throw InvalidArgument("expected " + head + ":N, got \"" + text + "\"");
    spec.kind = head == "diamond" ? MeshSpec::Kind::diamond : MeshSpec::Kind::triangle;
    spec.n = parse_positive(parts[1], text);
    return spec;
  }
  if (head == "cut") {
    if (parts.size() != 3) throw InvalidArgument("expected cut:N:eps, got \"" + text + "\"");
    spec.kind = MeshSpec::Kind::cut;
    spec.n = parse_positive(parts[1], text);
    spec.eps = parse_real(parts[2], text);
    return spec;
  }
  spec.kind = MeshSpec::Kind::file;
  spec.path = text;
  return spec;
}

PolygonalMesh build_mesh(const MeshSpec& spec) {
  switch (spec.kind) {
    case MeshSpec::Kind::diamond: return generate_diamond(spec.n);
    case MeshSpec::Kind::triangle: return generate_triangle_grid(spec.n);
    case MeshSpec::Kind::cut: return cut_with_line(generate_triangle_grid(spec.n), 0.5 + spec.eps.value_or(0.0));
    case MeshSpec::Kind::file: return read_mesh(spec.path);
  }
  throw InvalidArgument("unknown mesh kind");
}

std::vector<RunOutcome> run_mesh(const std::string& suite, const MeshSpec& spec, const PolygonalMesh& mesh,
                                 const RunConfig& config, const std::vector<PrecondKind>& kinds) {
  const FieldPair data = data_library(config.data);
  const AssembledSystem sys = config.problem == ProblemKind::projection
                                  ? assemble_projection_system(mesh, data.f)
                                  : assemble_darcy(mesh, data.f, data.g);
  const double alpha = aspect_ratio(mesh);

  std::vector<RunOutcome> out;
  for (PrecondKind kind : kinds) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const Preconditioner b = build_preconditioner(kind, sys, mesh, config.smoother, config.recursion);

    RunOutcome o;
    o.row.suite = suite;
    o.row.mesh = spec.label();
    o.row.n = spec.n;
    o.row.eps = spec.eps;
    o.row.ndof = sys.size();
    o.row.alpha = alpha;
    o.row.precond = kind;
    o.row.smoother = config.smoother;
    o.row.tol = config.gmres.tol;

    o.solve = gmres(sys.matrix, &b, sys.rhs, config.gmres);
    o.row.iters = o.solve.iterations;
    o.row.converged = o.solve.converged();

    if (config.compute_kappa) {
      try {
        o.cond = condition_number(sys.matrix, &b, config.cond);
        o.row.kappa = o.cond->kappa;
        o.row.kappa_estimated = o.cond->estimated;
      } catch (const DimensionExceedsCap&) {
        // Left empty: the CSV carries no value above the cap.
      }
    }
    if (!config.deterministic) o.row.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    out.push_back(std::move(o));
  }
  return out;
}

SweepDefinition sweep_definition(int table) {
  SweepDefinition def;
  def.table = table;
  switch (table) {
    case 1:
    case 2:
      def.problem = table == 1 ? ProblemKind::projection : ProblemKind::darcy;
      def.data = "f1";
      for (int n : {4, 8, 16, 32}) def.meshes.push_back(parse_mesh_spec("diamond:" + std::to_string(n)));
      def.estimate_above_cap = table == 1;
      return def;
    case 3:
    case 4:
      def.problem = table == 3 ? ProblemKind::projection : ProblemKind::darcy;
      def.data = "f2";
      def.meshes.push_back(parse_mesh_spec("triangle:" + std::to_string(kCutBackgroundN)));
      for (const char* eps : {"1e-2", "1e-4", "1e-6", "1e-8"}) {
        def.meshes.push_back(parse_mesh_spec("cut:" + std::to_string(kCutBackgroundN) + ":" + eps));
      }
      return def;
    default:
      throw InvalidArgument("unknown table " + std::to_string(table) + " (expected 1, 2, 3 or 4)");
  }
}

ExperimentReport run_sweep(int table, const SweepOptions& opts, const std::function<void(const ReportRow&)>& on_row) {
  const SweepDefinition def = sweep_definition(table);
  ExperimentReport rep;
  rep.table = table;
  rep.tol = opts.tol;
  rep.smoother = opts.smoother;
  rep.version = version_string();
  if (!opts.deterministic) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    rep.timestamp = buf;
  }

  RunConfig cfg;
  cfg.problem = def.problem;
  cfg.data = def.data;
  cfg.smoother = opts.smoother;
  cfg.recursion = opts.recursion;
  cfg.gmres.tol = opts.tol;
  cfg.gmres.maxit = opts.maxit;
  cfg.compute_kappa = opts.compute_kappa;
  cfg.cond.cap = opts.cap;
  cfg.cond.estimate_above_cap = def.estimate_above_cap;
  cfg.deterministic = opts.deterministic;

  const std::string suite = "table" + std::to_string(table);
  const std::vector<PrecondKind> kinds{PrecondKind::none, PrecondKind::diag, PrecondKind::add, PrecondKind::mult};
  std::size_t count = 0;
  for (const MeshSpec& spec : def.meshes) {
    if (opts.max_meshes && count++ >= opts.max_meshes) break;
    const PolygonalMesh mesh = build_mesh(spec);
    for (RunOutcome& o : run_mesh(suite, spec, mesh, cfg, kinds)) {
      if (on_row) on_row(o.row);
      rep.rows.push_back(std::move(o.row));
    }
  }
  return rep;
}

std::string csv_header() { return "suite,mesh,N,eps,ndof,alpha,precond,smoother,tol,kappa,iters,converged,seconds"; }

std::string csv_row(const ReportRow& r) {
  std::ostringstream os;
  os << r.suite << ',' << r.mesh << ',' << r.n << ',' << (r.eps ? fmt("%g", *r.eps) : "") << ',' << r.ndof << ','
     << fmt("%.6e", r.alpha) << ',' << to_string(r.precond) << ',' << to_string(r.smoother) << ','
     << fmt("%g", r.tol) << ',' << (r.kappa ? fmt("%.6e", *r.kappa) : "") << ',' << r.iters << ','
     << (r.converged ? "true" : "false") << ',' << (r.seconds ? fmt("%.3f", *r.seconds) : "");
  return os.str();
}

namespace {

std::string kappa_cell(const ReportRow& r) {
  if (!r.kappa) return "";
  const double k = *r.kappa;
  std::string s = k >= 100.0 ? fmt("%.2E", k) : fmt("%.2f", k);
  return r.kappa_estimated ? s + "*" : s;
}

std::string iters_cell(const ReportRow& r) { return std::to_string(r.iters) + (r.converged ? "" : " (nc)"); }

}  // namespace

std::string format_markdown(const ExperimentReport& rep) {
  const bool cut = rep.table == 3 || rep.table == 4;
  const bool darcy = rep.table == 2 || rep.table == 4;
  const std::vector<PrecondKind> kinds{PrecondKind::none, PrecondKind::diag, PrecondKind::add, PrecondKind::mult};
  const std::map<PrecondKind, std::string> kname = darcy
      ? std::map<PrecondKind, std::string>{{PrecondKind::none, "𝒜"}, {PrecondKind::diag, "𝓑_diag𝒜"},
                                           {PrecondKind::add, "𝓑_add𝒜"}, {PrecondKind::mult, "𝓑_mult𝒜"}}
      : std::map<PrecondKind, std::string>{{PrecondKind::none, "A"}, {PrecondKind::diag, "diag(A)⁻¹A"},
                                           {PrecondKind::add, "B_add A"}, {PrecondKind::mult, "B_mult A"}};

  std::ostringstream os;
  os << "## Table " << rep.table << (darcy ? ": Darcy" : ": H(div) projection")
     << (cut ? ", cut meshes" : ", diamond meshes") << "\n\n";
  os << "tol = " << fmt("%g", rep.tol) << ", smoother = " << to_string(rep.smoother) << ", version "
     << rep.version;
  if (!rep.timestamp.empty()) os << ", generated " << rep.timestamp;
  os << "\n\n";

  // Group rows per mesh, keeping sweep order.
  std::vector<std::string> meshes;
  std::map<std::string, std::map<PrecondKind, const ReportRow*>> by_mesh;
  for (const ReportRow& r : rep.rows) {
    if (!by_mesh.count(r.mesh)) meshes.push_back(r.mesh);
    by_mesh[r.mesh][r.precond] = &r;
  }

  os << (cut ? "| ε | α | #dof |" : "| N | #dof |");
  for (PrecondKind k : kinds) os << " κ(" << kname.at(k) << ") |";
  for (PrecondKind k : kinds) os << " it " << kname.at(k) << " |";
  os << "\n|" << (cut ? "---|---|---|" : "---|---|");
  for (std::size_t i = 0; i < 2 * kinds.size(); ++i) os << "---|";
  os << "\n";
  bool any_estimate = false;
  for (const std::string& m : meshes) {
    const auto& row = by_mesh[m];
    const ReportRow& first = *row.begin()->second;
    if (cut) {
      os << "| " << (first.eps ? fmt("%.0E", *first.eps) : "-") << " | " << fmt("%.2E", first.alpha) << " | "
         << first.ndof << " |";
    } else {
      os << "| " << first.n << " | " << first.ndof << " |";
    }
    for (PrecondKind k : kinds) {
      os << ' ' << (row.count(k) ? kappa_cell(*row.at(k)) : "") << " |";
      if (row.count(k) && row.at(k)->kappa_estimated) any_estimate = true;
    }
    for (PrecondKind k : kinds) os << ' ' << (row.count(k) ? iters_cell(*row.at(k)) : "") << " |";
    os << "\n";
  }
  os << "\n";
  if (any_estimate) os << "\\* Krylov (Lanczos/Arnoldi) estimate of the extreme eigenvalues.\n";
  os << "Empty κ cells: dimension above the condition number cap. (nc): GMRES did not converge.\n";
  return os.str();
}

std::string version_string() { return VEMASP_VERSION; }

}  // namespace vemasp
