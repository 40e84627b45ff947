#include "vemasp/complex_ops.hpp"
#include "vemasp/mesh.hpp"
#include "vemasp/problems.hpp"

#include <benchmark/benchmark.h>

using namespace vemasp;

static void BM_GenerateDiamond(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_diamond(n));
}
BENCHMARK(BM_GenerateDiamond)->Arg(8)->Arg(32);

static void BM_CutMesh(benchmark::State& state) {
  const PolygonalMesh grid = generate_triangle_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cut_with_line(grid, 0.5 + 1e-6));
}
BENCHMARK(BM_CutMesh)->Arg(16)->Arg(64);

static void BM_AssembleProjection(benchmark::State& state) {
  const PolygonalMesh m = generate_diamond(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_projection(m));
  state.counters["dofs"] = m.num_facets();
}
BENCHMARK(BM_AssembleProjection)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_AssembleDarcy(benchmark::State& state) {
  const PolygonalMesh m = generate_diamond(static_cast<int>(state.range(0)));
  const VectorField f = vector_field("f1");
  const ScalarField g = scalar_field("g1");
  for (auto _ : state) benchmark::DoNotOptimize(assemble_darcy(m, f, g));
}
BENCHMARK(BM_AssembleDarcy)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_AssembleNodal(benchmark::State& state) {
  const PolygonalMesh m = generate_diamond(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_nodal_h1(m, Arity::scalar));
}
BENCHMARK(BM_AssembleNodal)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_ComplexOperators(benchmark::State& state) {
  const PolygonalMesh m = generate_diamond(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(curl_matrix(m));
    benchmark::DoNotOptimize(div_matrix(m));
    benchmark::DoNotOptimize(transfer_matrix(m));
  }
}
BENCHMARK(BM_ComplexOperators)->Arg(32)->Unit(benchmark::kMillisecond);
