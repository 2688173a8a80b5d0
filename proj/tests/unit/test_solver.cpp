#include <cmath>
#include <random>

#include "doctest.h"
#include "mhdvac/scenario.hpp"

using namespace mhdvac;

namespace {

GridSpec grid(int n1, int n2, int n3) {
  GridSpec g;
  g.nx1 = n1;
  g.nx2 = n2;
  g.nx3 = n3;
  return g;
}

SolverState pulse(const GridSpec& g, double x0) {
  SolverState s = SolverState::zero(g);
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k)
      for (int i = 0; i < g.n1p(); ++i) {
        const double r = (g.x1_fluid(i) - x0) / 0.4;
        const double b = std::abs(r) < 1.0 ? std::pow(1.0 - r * r, 4) : 0.0;
        s.U(fluid::kQ, g.point(i, j, k)) = 0.1 * b * (1.0 + 0.3 * std::cos(2.0 * g.x2(j)));
      }
  return s;
}

}  // namespace

TEST_CASE("zero data stays zero") {
  const GridSpec g = grid(16, 8, 8);
  PhysicsParams par;
  par.sigmaTension = 0.1;
  for (const std::string& name : preset_names()) {
    const BasicState ring = BasicState::build(preset_recipe(name), g, EosModel{}, par);
    SolverConfig cfg;
    cfg.grid = g;
    cfg.tEnd = 0.1;
    const RunArtifact run = run_simulation(cfg, ring, Sources{});
    CHECK(run.final.U.cwiseAbs().maxCoeff() == 0.0);
    CHECK(run.final.V.cwiseAbs().maxCoeff() == 0.0);
    CHECK(run.final.phi.cwiseAbs().maxCoeff() == 0.0);
    for (const SnapshotRow& r : run.series) CHECK(r.I == 0.0);
  }
}

TEST_CASE("runs are deterministic") {
  ScenarioConfig c = ScenarioConfig::parse(R"({"kind":"simulate","ring":{"preset":"shear"},
      "grid":{"nx1":16,"nx2":8,"nx3":4},"solver":{"tEnd_time":0.2}})");
  const SimulationResult a = simulate(c), b = simulate(c);
  CHECK(a.run.series_csv() == b.run.series_csv());
  CHECK(a.run.steps == b.run.steps);
  CHECK(a.run.series.size() >= 2);
}

TEST_CASE("free pulse on a trivial ring keeps its energy bounded") {
  const GridSpec g = grid(32, 8, 8);
  PhysicsParams par;
  par.sigmaTension = 0.1;
  const BasicState ring = BasicState::build(preset_recipe("trivial"), g, EosModel{}, par);
  SolverConfig cfg;
  cfg.grid = g;
  cfg.tEnd = 1.0;
  cfg.snapshotEvery = 2;
  const SolverState init = pulse(g, 0.8);
  const RunArtifact run = run_simulation(cfg, ring, Sources{}, &init);
  const double e0 = run.series.front().I + run.series.front().Ivac + run.series.front().surfTerm;
  REQUIRE(e0 > 0.0);
  for (const SnapshotRow& r : run.series) CHECK(r.I + r.Ivac + r.surfTerm <= 1.05 * e0);
  // The pulse reaches the front and moves it.
  CHECK(run.final.phi.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("manufactured solution converges at second order") {
  ConvergenceSpec spec;
  spec.resolutions = {12, 24, 48};
  spec.tEnd = 0.1;
  PhysicsParams par;
  par.sigmaTension = 0.1;
  const ConvergenceReport r = run_mms_convergence(spec, preset_recipe("trivial"), par);
  REQUIRE(r.order.size() == 2);
  CHECK(r.error[0] > r.error[1]);
  CHECK(r.error[1] > r.error[2]);
  CHECK(r.order.back() > 1.7);
}

TEST_CASE("solver configuration is validated") {
  SolverConfig cfg;
  cfg.grid = grid(16, 8, 8);
  CHECK_NOTHROW(cfg.validate());
  cfg.cfl = 0.5;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg.cfl = 0.4;
  cfg.tEnd = 0.0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg.tEnd = 0.5;
  cfg.scheme = "euler";
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg.scheme = "ssprk3";
  cfg.snapshotEvery = 0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("run-length guard and grid mismatch") {
  const GridSpec g = grid(16, 8, 8);
  const BasicState ring = BasicState::build(preset_recipe("trivial"), g, EosModel{}, PhysicsParams{});
  SolverConfig cfg;
  cfg.grid = g;
  cfg.tEnd = 50.0;
  CHECK_THROWS_AS(run_simulation(cfg, ring, Sources{}), UsageError);
  cfg.allowLongRun = true;
  cfg.tEnd = 0.05;
  CHECK_NOTHROW(run_simulation(cfg, ring, Sources{}));
  cfg.grid = grid(32, 8, 8);
  CHECK_THROWS_AS(run_simulation(cfg, ring, Sources{}), UsageError);
}

TEST_CASE("time step respects the stability bound") {
  const GridSpec g = grid(16, 8, 8);
  const BasicState ring = BasicState::build(preset_recipe("shear"), g, EosModel{}, PhysicsParams{});
  const SemiDiscrete op(ring);
  CHECK(op.max_speed() > 0.0);
  CHECK(op.stable_dt(0.2) == doctest::Approx(0.5 * op.stable_dt(0.4)).epsilon(1e-14));
  SolverConfig cfg;
  cfg.grid = g;
  cfg.tEnd = 0.1;
  const RunArtifact run = run_simulation(cfg, ring, Sources{});
  CHECK(run.dt <= op.stable_dt(cfg.cfl) * (1.0 + 1e-12));
  CHECK(run.dt * run.steps == doctest::Approx(cfg.tEnd).epsilon(1e-12));
}
