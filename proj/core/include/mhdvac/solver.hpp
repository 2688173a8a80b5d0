#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "mhdvac/basic_state.hpp"
#include "mhdvac/operators.hpp"

namespace mhdvac {

struct SolverConfig {
  GridSpec grid;
  double cfl = 0.4;
  double tEnd = 0.5;
  std::string bcOuter = "absorbing";
  std::string scheme = "ssprk3";
  int snapshotEvery = 5;
  double blowupFactor = 1e12;
  // Skip the run-length guard (only sensible when exact outer data is supplied).
  bool allowLongRun = false;

  void validate() const;
};

inline constexpr double kCflMax = 0.4;

// Inhomogeneous data. An empty function means zero.
struct Sources {
  std::function<void(double, Field8&)> fluid;        // 8 x npts, right-hand side of the fluid system
  std::function<void(double, Field6&)> vacuum;       // 6 x npts
  std::function<void(double, Field4&)> boundary;     // 4 x ncols, right-hand side of the interface rows
  std::function<void(double, Field8&)> outerFluid;   // 8 x ncols, data at x1 = L1
  std::function<void(double, Field6&)> outerVacuum;  // 6 x ncols, data at x1 = -L1

  bool empty() const { return !fluid && !vacuum && !boundary && !outerFluid && !outerVacuum; }
};

struct SolverState {
  Field8 U;
  Field6 V;
  SurfaceField phi;
  double t = 0.0;

  static SolverState zero(const GridSpec& g);
};

// Per-column inputs of the semi-discrete operator over scalar S.
template <class S>
struct ColumnIn {
  const S* U = nullptr;    // n x 8, node-major
  const S* D2U = nullptr;
  const S* D3U = nullptr;
  const S* V = nullptr;    // n x 6
  const S* D2V = nullptr;
  const S* D3V = nullptr;
  S phi{};
  S d2phi{};
  S d3phi{};
  S curv{};   // div'(B grad' phi)
  S dE2{};    // d2(E1 phi) of the ring field E1
  S dE3{};
  const double* f = nullptr;      // n x 8
  const double* gv = nullptr;     // n x 6
  const double* b = nullptr;      // 4
  const double* gOutF = nullptr;  // 8
  const double* gOutV = nullptr;  // 6
};

template <class S>
struct ColumnOut {
  S* Ut = nullptr;
  S* Vt = nullptr;
  S dtPhi{};
  double residual = 0.0;  // of the interface solve
};

// Method-of-lines operator for the linearized interface problem around a basic state.
class SemiDiscrete {
 public:
  explicit SemiDiscrete(const BasicState& ring);

  template <class S>
  void column_rhs(int c, const ColumnIn<S>& in, ColumnOut<S>& out) const;

  // Full right-hand side; writes the interface velocity dphi/dt into dtPhi when given.
  void rhs(const SolverState& s, const Sources& src, SolverState& ds) const;

  double stable_dt(double cfl) const;
  double max_speed() const { return maxSpeed_; }
  const BasicState& ring() const { return ring_; }

 private:
  struct Interface {
    Vec8 satQ;      // A0^-1 A1t e_q: the total pressure enters the fluid only through this column
    Vec6 s1, s2;    // incoming vacuum directions
    Vec6 sat1, sat2;
    Eigen::Matrix4d M;
    Eigen::Matrix4d Minv;
    Vec3 N, tau2, tau3;
    Vec3 hr, Er;
    double vr2 = 0.0, vr3 = 0.0;
    double dtPhiRing = 0.0;
  };

  const BasicState& ring_;
  int n_ = 0;
  double invH0_ = 0.0;
  double eps_ = 0.0;
  double sigma_ = 0.0;
  double maxSpeed_ = 0.0;
  double spectralSum_ = 0.0;
  // Per point, column-major: P1 P2 P3 PC A0inv (fluid) and Q1 Q2 Q3 B0inv QC (vacuum).
  std::vector<double> fluid_;
  std::vector<double> vac_;
  std::vector<Mat8, Eigen::aligned_allocator<Mat8>> outF_;
  std::vector<Mat6, Eigen::aligned_allocator<Mat6>> outV_;
  std::vector<Interface, Eigen::aligned_allocator<Interface>> iface_;
};

struct SnapshotRow {
  double t = 0.0;
  double I = 0.0;
  double Itan1 = 0.0;
  double Ivac = 0.0;
  double surfTerm = 0.0;
  double ratio54 = 0.0;
  double divFluidMax = 0.0;
  double divVacMax = 0.0;
  double traceHNMax = 0.0;
};

// Running squared space-time integrals entering both sides of the a priori estimate.
struct EstimateAccumulator {
  double fluidSq = 0.0;
  double vacuumSq = 0.0;
  double frontSq = 0.0;
  double sourceSq = 0.0;
  double lastT = 0.0;
  double lastFluid = 0.0, lastVacuum = 0.0, lastFront = 0.0, lastSource = 0.0;
  bool started = false;

  void add(double t, double fluid, double vacuum, double front, double source);
  double lhs() const;
  double rhs() const;
};

struct RunArtifact {
  SolverConfig cfg;
  std::vector<SnapshotRow> series;
  SolverState final;
  EstimateAccumulator estimate;
  int steps = 0;
  double dt = 0.0;
  double maxConstraint = 0.0;
  bool aborted = false;
  std::string abortReason;

  std::string series_csv() const;
};

// One SSP-RK3 step.
SolverState advance(const SolverState& s, const SemiDiscrete& op, const Sources& src, double dt);

// Time loop with diagnostics at every snapshotEvery steps. Throws NumericalError on blow-up.
RunArtifact run_simulation(const SolverConfig& cfg, const BasicState& ring, const Sources& src,
                           const SolverState* initial = nullptr);

// Turn solver state plus its time derivative into a linear perturbation (good unknowns).
LinearPerturbation to_perturbation(const SolverState& s, const SolverState& ds, const GridSpec& g);

}  // namespace mhdvac
