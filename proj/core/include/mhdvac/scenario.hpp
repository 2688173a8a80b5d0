#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhdvac/basic_state.hpp"
#include "mhdvac/energy.hpp"
#include "mhdvac/frozen_mode.hpp"
#include "mhdvac/solver.hpp"

namespace mhdvac {

// Gaussian forcing in the velocity and entropy rows, switched on smoothly from t = 0.
struct SourceSpec {
  double amplitude = 1.0;
  double centerX1 = 1.0;
  double width = 0.6;
  double duration = 0.5;
};

struct ModeScanSpec {
  double kMin = 1.0;
  double kMax = 10.0;
  int count = 10;
  double angle = 0.0;
  int n1 = 32;
  double nWaves = 1.0;
  std::vector<double> sTension{0.0, 0.1};
};

struct ConvergenceSpec {
  std::vector<int> resolutions{16, 32, 64};
  std::vector<int> constraintResolutions{32, 64, 128};
  double tEnd = 0.3;
  double constraintTEnd = 0.3;
  int nx3 = 4;
  double L1 = 2.0;
};

struct ScenarioConfig {
  std::string kind = "simulate";
  std::uint64_t seed = 1;
  std::string output = "out";
  PhysicsParams physics;
  EosModel eos;
  RingRecipe ring;
  GridSpec grid;
  SolverConfig solver;  // its grid is ignored; grid above is authoritative
  SourceSpec source;
  ModeScanSpec modeScan;
  ConvergenceSpec convergence;
  int auditStates = 1000;
  bool suite = false;

  // Strict parse: unknown keys and wrong types are rejected with the key path in the message.
  static ScenarioConfig parse(const std::string& jsonText);
  std::string to_json() const;
  void validate() const;
  SolverConfig solver_config() const;
};

const std::vector<std::string>& scenario_kinds();

Sources pulse_sources(const SourceSpec& spec, const GridSpec& g, const RingRecipe& ring);

struct SimulationResult {
  RunArtifact run;
  Estimate54 estimate;
  double K = 0.0;
};

SimulationResult simulate(const ScenarioConfig& cfg);

struct AuditReport {
  int states = 0;
  bool allSymmetric = true;
  bool a0Positive = true;
  double minA0Eigen = 0.0;
  struct NuCheck {
    double nu;
    double minEigen;
    bool positive;
  };
  std::vector<NuCheck> nuChecks;
  bool nuCriterion = true;
};

AuditReport run_matrix_audit(std::uint64_t seed, int states);

struct SpectralReport {
  double maxBoundaryEigenError = 0.0;  // closed-form vs numeric, Maxwell boundary matrix
  int samples = 0;
  bool fluidInertiaOk = true;
  double fluidFormError = 0.0;  // |A1t u.u - 2 q v_N| relative
  struct VacuumKernel {
    double eps;
    int minZeros;
    int maxZeros;
  };
  std::vector<VacuumKernel> vacuum;
};

SpectralReport run_spectral_signatures(std::uint64_t seed);

struct LinearizationReport {
  std::vector<double> thetas;
  std::vector<double> boundaryErr;
  std::vector<double> fluidErr;
  std::vector<double> vacuumErr;
  std::vector<double> curvatureErr;
  // log10 ratios of consecutive errors (one per theta decade)
  std::vector<double> boundaryOrder, fluidOrder, vacuumOrder, curvatureOrder;
};

LinearizationReport run_linearization_check(const std::string& preset, std::uint64_t seed, int n = 16);

struct ConvergenceReport {
  std::vector<int> n;
  std::vector<double> error;
  std::vector<double> order;
};

// Manufactured-solution study on a flat basic state.
ConvergenceReport run_mms_convergence(const ConvergenceSpec& spec, const RingRecipe& ring, const PhysicsParams& phys,
                                      const EosModel& eos = {});

struct ConstraintStudy {
  std::vector<int> n;
  std::vector<double> initialMax;
  std::vector<double> finalMax;
  std::vector<double> maxOverRun;
  std::vector<double> order;
  std::vector<double> growthBound;  // max_t residual(t) / (h^2 (1 + t))
};

ConstraintStudy run_constraint_study(const ConvergenceSpec& spec, const RingRecipe& ring, const PhysicsParams& phys,
                                     double tEnd, const EosModel& eos = {});

struct SuiteEntry {
  std::string preset;
  Estimate54 coarse;
  Estimate54 fine;
  double relativeChange = 0.0;
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;
  double constant = 0.0;
};

// Runs every preset at the configured grid and at refine x the grid.
SuiteReport run_estimate_suite(const ScenarioConfig& base, int refine = 2);

struct ModeScanCurve {
  double sTension = 0.0;
  std::vector<GrowthPoint> points;
};

std::vector<ModeScanCurve> run_mode_scan(const ScenarioConfig& cfg);

// Monotonicity of the growth rate over the points with k >= fromK, with an absolute slack.
bool increasing_from(const std::vector<GrowthPoint>& c, double fromK, double slack = 0.0);
bool nonincreasing_from(const std::vector<GrowthPoint>& c, double fromK, double slack = 0.0);

}  // namespace mhdvac
