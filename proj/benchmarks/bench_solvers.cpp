#include "vemasp/krylov.hpp"
#include "vemasp/precond.hpp"
#include "vemasp/problems.hpp"

#include <benchmark/benchmark.h>

using namespace vemasp;

namespace {

struct Setup {
  PolygonalMesh mesh;
  AssembledSystem system;
};

Setup projection(int n) {
  PolygonalMesh m = generate_diamond(n);
  AssembledSystem s = assemble_projection_system(m, vector_field("f1"));
  return {std::move(m), std::move(s)};
}

}  // namespace

static void BM_BuildAdditive(benchmark::State& state) {
  const Setup s = projection(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_preconditioner(PrecondKind::add, s.system, s.mesh));
}
BENCHMARK(BM_BuildAdditive)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_ApplyPreconditioner(benchmark::State& state) {
  const Setup s = projection(32);
  const auto kind = static_cast<PrecondKind>(state.range(0));
  const Preconditioner b = build_preconditioner(kind, s.system, s.mesh);
  const Vector r = Vector::Ones(s.system.size());
  for (auto _ : state) benchmark::DoNotOptimize(b(r));
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_ApplyPreconditioner)
    ->Arg(static_cast<int>(PrecondKind::diag))
    ->Arg(static_cast<int>(PrecondKind::add))
    ->Arg(static_cast<int>(PrecondKind::mult))
    ->Unit(benchmark::kMicrosecond);

static void BM_GmresAdditive(benchmark::State& state) {
  const Setup s = projection(static_cast<int>(state.range(0)));
  const Preconditioner b = build_preconditioner(PrecondKind::add, s.system, s.mesh);
  int iters = 0;
  for (auto _ : state) {
    const SolveResult r = gmres(s.system.matrix, &b, s.system.rhs);
    iters = r.iterations;
  }
  state.counters["iters"] = iters;
}
BENCHMARK(BM_GmresAdditive)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_GmresDarcy(benchmark::State& state) {
  const PolygonalMesh m = generate_diamond(static_cast<int>(state.range(0)));
  const AssembledSystem sys = assemble_darcy(m, vector_field("f1"), scalar_field("g1"));
  const Preconditioner b = build_preconditioner(PrecondKind::add, sys, m);
  int iters = 0;
  for (auto _ : state) iters = gmres(sys.matrix, &b, sys.rhs).iterations;
  state.counters["iters"] = iters;
}
BENCHMARK(BM_GmresDarcy)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_ConditionDense(benchmark::State& state) {
  const Setup s = projection(4);
  const Preconditioner b = build_preconditioner(PrecondKind::add, s.system, s.mesh);
  for (auto _ : state) benchmark::DoNotOptimize(condition_number(s.system.matrix, &b));
}
BENCHMARK(BM_ConditionDense)->Unit(benchmark::kMillisecond);
