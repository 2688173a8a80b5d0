#include <benchmark/benchmark.h>

#include "mhdvac/frozen_mode.hpp"
#include "mhdvac/scenario.hpp"
#include "mhdvac/symmetrizers.hpp"

using namespace mhdvac;

namespace {

GridSpec cube(int n) {
  GridSpec g;
  g.nx1 = n;
  g.nx2 = n;
  g.nx3 = n;
  return g;
}

void BM_SymmetrizerAssembly(benchmark::State& st) {
  FluidState u;
  u.q = 1.2;
  u.v = Vec3(0.1, -0.2, 0.3);
  u.H = Vec3(0.4, 0.2, -0.1);
  const EosModel eos;
  for (auto _ : st) {
    Mat8 a = build_A0(u, eos);
    for (int i = 1; i <= 3; ++i) a += build_Ai(u, eos, i);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_SymmetrizerAssembly);

void BM_MaxwellBoundary(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_boundary_maxwell(FrontPoint{0.0, 0.3, -0.2}, 0.1));
}
BENCHMARK(BM_MaxwellBoundary);

void BM_RightHandSide(benchmark::State& st) {
  const GridSpec g = cube(static_cast<int>(st.range(0)));
  PhysicsParams par;
  par.sigmaTension = 0.1;
  const BasicState ring = BasicState::build(preset_recipe("mixed"), g, EosModel{}, par);
  const SemiDiscrete op(ring);
  SolverState s = SolverState::zero(g);
  s.U.setRandom();
  s.V.setRandom();
  s.U *= 1e-3;
  s.V *= 1e-3;
  SolverState ds;
  for (auto _ : st) {
    op.rhs(s, Sources{}, ds);
    benchmark::DoNotOptimize(ds.U.data());
  }
  st.SetItemsProcessed(st.iterations() * g.npts());
}
BENCHMARK(BM_RightHandSide)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_FrozenModeGrowth(benchmark::State& st) {
  ModeSpec m;
  m.k2 = 10.0;
  m.ring = preset_recipe("bigE");
  m.sTension = 0.1;
  m.epsilon = 0.1;
  FrozenModeOptions o;
  o.n1 = static_cast<int>(st.range(0));
  o.nWaves = 1.0;
  for (auto _ : st) benchmark::DoNotOptimize(frozen_mode_growth(m, o).growthRate);
}
BENCHMARK(BM_FrozenModeGrowth)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
