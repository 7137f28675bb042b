#include <benchmark/benchmark.h>

#include "qgb/consistency.hpp"
#include "qgb/lattice.hpp"
#include "qgb/sampling.hpp"
#include "qgb/zerocurv.hpp"

using namespace qgb;

namespace {

const char* kFamilies[] = {"Q1d0", "H1", "Q3d1", "A2", "Q4"};

void BM_Cube(benchmark::State& state) {
  auto eq = bulk_equation(kFamilies[state.range(0)]);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(check_cube(eq, 10, seed++));
  state.SetLabel(eq.id());
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_Cube)->DenseRange(0, 4);

void BM_BoundaryConsistency(benchmark::State& state) {
  const char* rows[] = {"Q1d0.b1", "H3d1.b2+", "A2.b1+", "Q4.b1"};
  auto beq = boundary_equation(rows[state.range(0)], Scalar::fraction(5, 7));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(check_boundary_consistency(beq.bulk(), beq, 10, seed++));
  state.SetLabel(beq.id());
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_BoundaryConsistency)->DenseRange(0, 3);

void BM_ZcrBoundary(benchmark::State& state) {
  auto beq = boundary_equation("Q1d0.b1", Scalar::fraction(5, 7));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(check_zcr_boundary(beq.bulk(), beq, 10, seed++));
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_ZcrBoundary);

// Exact rationals grow along the strip, so cost is far from linear in the size.
void BM_PropagateStrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto beq = boundary_equation("Q1d0.b1", Scalar::fraction(5, 7));
  Strip st = make_strip(n, n, Scalar::fraction(3, 2), beq);
  Sampler s(3, 0);
  FieldAssignment init(st.graph.vertex_count());
  for (int v : st.initial_vertices()) init[v] = s.rational();
  for (auto _ : state) benchmark::DoNotOptimize(propagate(st.graph, beq.bulk(), &beq, init));
}
BENCHMARK(BM_PropagateStrip)->RangeMultiplier(2)->Range(2, 8);

}  // namespace
BENCHMARK_MAIN();
