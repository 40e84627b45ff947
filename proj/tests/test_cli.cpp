#include "cli.hpp"

#include "vemasp/mesh.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "vemasp");
  std::ostringstream out, err;
  CliResult r;
  r.code = vemasp::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "vemasp_cli_test";
  fs::create_directories(dir);
  fs::remove(dir / name);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, MeshDiamond) {
  const fs::path p = scratch("d4.json");
  const CliResult r = run({"mesh", "--type", "diamond", "--N", "4", "--out", p.string(), "--validate"});
  EXPECT_EQ(r.code, vemasp::cli::kExitOk) << r.err;
  EXPECT_EQ(vemasp::read_mesh(p.string()).num_vertices(), 169);
  EXPECT_NE(r.out.find("169 vertices"), std::string::npos);
}

TEST(Cli, MeshCutAspectRatio) {
  const fs::path p = scratch("cut.json");
  const CliResult r = run({"mesh", "--type", "cut", "--N", "16", "--eps", "1e-6", "--out", p.string()});
  EXPECT_EQ(r.code, vemasp::cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("alpha = 6.25E+04"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"mesh", "--type", "diamond", "--out", scratch("x.json").string()}).code, vemasp::cli::kExitUsage);
  EXPECT_EQ(run({"mesh", "--type", "cut", "--N", "4", "--out", scratch("x.json").string()}).code,
            vemasp::cli::kExitUsage);
  EXPECT_EQ(run({"mesh", "--type", "hex", "--N", "4", "--out", "x"}).code, vemasp::cli::kExitUsage);
  EXPECT_EQ(run({}).code, vemasp::cli::kExitUsage);
  EXPECT_EQ(run({"project", "--mesh", "diamond:0"}).code, vemasp::cli::kExitUsage);
  EXPECT_EQ(run({"project", "--mesh", "diamond:2", "--data", "f7"}).code, vemasp::cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--table", "5", "--out", "x"}).code, vemasp::cli::kExitUsage);
  EXPECT_EQ(run({"project", "--mesh", "/nonexistent/mesh.json"}).code, vemasp::cli::kExitUsage);
}

TEST(Cli, ProjectAndDarcy) {
  const fs::path report = scratch("report.csv");
  CliResult r = run({"project", "--mesh", "diamond:2", "--precond", "add", "--cond", "--report", report.string(),
               "--deterministic"});
  EXPECT_EQ(r.code, vemasp::cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("kappa"), std::string::npos);
  r = run({"darcy", "--mesh", "diamond:2", "--precond", "mult", "--report", report.string(), "--deterministic"});
  EXPECT_EQ(r.code, vemasp::cli::kExitOk) << r.err;
  const std::string csv = slurp(report);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.rfind("suite,", 0), 0u);

  // an iteration limit that cannot be met is a numerical failure
  r = run({"project", "--mesh", "diamond:4", "--precond", "none", "--maxit", "3"});
  EXPECT_EQ(r.code, vemasp::cli::kExitNumerical);
}

TEST(Cli, SweepDeterministic) {
  const fs::path a = scratch("a.csv"), b = scratch("b.csv"), md = scratch("a.md");
  const std::vector<std::string> base{"sweep", "--table", "1", "--max-meshes", "1", "--deterministic"};
  auto with = [&](const fs::path& out) {
    auto args = base;
    args.insert(args.end(), {"--out", out.string(), "--markdown", md.string()});
    return args;
  };
  EXPECT_EQ(run(with(a)).code, vemasp::cli::kExitOk);
  EXPECT_EQ(run(with(b)).code, vemasp::cli::kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  const std::string csv = slurp(a);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);  // header plus four preconditioners
  EXPECT_NE(slurp(md).find("| 4 | 312 |"), std::string::npos);
}

TEST(Cli, Version) {
  const CliResult r = run({"--version"});
  EXPECT_EQ(r.code, vemasp::cli::kExitOk);
  EXPECT_FALSE(r.out.empty());
}
