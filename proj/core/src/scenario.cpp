#include "mhdvac/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <set>

#include "json.hpp"
#include "mhdvac/errors.hpp"
#include "mhdvac/symmetrizers.hpp"

namespace mhdvac {

namespace {

using json = nlohmann::json;

class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw UsageError("config field '" + (path_.empty() ? "<root>" : path_) + "' must be an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  template <class T>
  void read(const char* key, T& out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    const json& v = j_.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) bad(key);
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) bad(key);
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) bad(key);
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) bad(key);
    }
    try {
      out = v.get<T>();
    } catch (const json::exception&) {
      bad(key);
    }
  }

  void read_vec3(const char* key, Vec3& out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    const json& v = j_.at(key);
    if (!v.is_array() || v.size() != 3) bad(key);
    for (int k = 0; k < 3; ++k) {
      if (!v[k].is_number()) bad(key);
      out[k] = v[k].get<double>();
    }
  }

  template <class T>
  void read_list(const char* key, std::vector<T>& out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    const json& v = j_.at(key);
    if (!v.is_array()) bad(key);
    out.clear();
    for (const json& e : v) {
      if (!e.is_number()) bad(key);
      out.push_back(e.get<T>());
    }
  }

  Section sub(const char* key) {
    seen_.insert(key);
    return Section(j_.at(key), where(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw UsageError("unknown config field '" + where(it.key()) + "'");
    }
  }

 private:
  [[noreturn]] void bad(const std::string& key) const {
    throw UsageError("config field '" + where(key) + "' has the wrong type");
  }
  std::string where(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  return v / v.norm();
}

FluidState random_hyperbolic(std::mt19937_64& rng, const EosModel& eos) {
  for (;;) {
    FluidState s;
    s.q = uniform(rng, 0.2, 3.0);
    for (int k = 0; k < 3; ++k) {
      s.v[k] = uniform(rng, -2.0, 2.0);
      s.H[k] = uniform(rng, -1.5, 1.5);
    }
    s.S = uniform(rng, -1.0, 1.0);
    if (check_hyperbolicity(s, eos)) return s;
  }
}

double order_of(double coarse, double fine, double ratio) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return 0.0;
  return std::log(coarse / fine) / std::log(ratio);
}

// Smooth periodic random field on one slab: sum of two tangential modes times a normal profile.
template <int C>
Field<C> random_smooth(const GridSpec& g, bool vacuumSlab, std::mt19937_64& rng, double amp) {
  Field<C> f(C, g.npts());
  const double two_pi = 2.0 * std::numbers::pi;
  for (int m = 0; m < C; ++m) {
    double A[2], ph[2], a[2], b[2];
    int m2[2], m3[2];
    for (int r = 0; r < 2; ++r) {
      A[r] = uniform(rng, -1.0, 1.0);
      ph[r] = uniform(rng, 0.0, two_pi);
      a[r] = uniform(rng, 0.5, 2.0);
      b[r] = uniform(rng, 0.0, two_pi);
      m2[r] = 1 + r;
      m3[r] = r;
    }
    for (int j = 0; j < g.nx2; ++j)
      for (int k = 0; k < g.nx3; ++k)
        for (int i = 0; i < g.n1p(); ++i) {
          const double x1 = vacuumSlab ? g.x1_vacuum(i) : g.x1_fluid(i);
          double s = 0.0;
          for (int r = 0; r < 2; ++r) {
            s += A[r] * std::sin(two_pi * (m2[r] * g.x2(j) / g.L2 + m3[r] * g.x3(k) / g.L3) + ph[r]) *
                 std::cos(a[r] * x1 + b[r]);
          }
          f(m, g.point(i, j, k)) = amp * s;
        }
  }
  return f;
}

SurfaceField random_surface(const GridSpec& g, std::mt19937_64& rng, double amp) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double A = uniform(rng, 0.5, 1.0), B = uniform(rng, -0.5, 0.5);
  const double p1 = uniform(rng, 0.0, two_pi), p2 = uniform(rng, 0.0, two_pi);
  SurfaceField s(g.ncols());
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k)
      s[g.col(j, k)] = amp * (A * std::sin(two_pi * g.x2(j) / g.L2 + p1) +
                              B * std::cos(two_pi * (g.x2(j) / g.L2 + g.x3(k) / g.L3) + p2));
  return s;
}

void require_flat(const RingRecipe& r, const char* what) {
  if (r.frontAmplitude != 0.0) throw UsageError(std::string(what) + " needs a flat basic front");
}

}  // namespace

const std::vector<std::string>& scenario_kinds() {
  static const std::vector<std::string> k{"matrix-audit", "mode-scan", "simulate", "verify-54", "convergence"};
  return k;
}

ScenarioConfig ScenarioConfig::parse(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  ScenarioConfig c;
  Section top(root, "");
  top.read("kind", c.kind);
  top.read("seed", c.seed);
  top.read("output", c.output);
  top.read("suite", c.suite);
  if (top.has("physics")) {
    Section s = top.sub("physics");
    s.read("epsilon", c.physics.epsilon);
    s.read("sigmaTension", c.physics.sigmaTension);
    s.finish();
  }
  if (top.has("eos")) {
    Section s = top.sub("eos");
    s.read("gamma", c.eos.gamma);
    s.read("entropyScale", c.eos.entropyScale);
    s.finish();
  }
  if (top.has("ring")) {
    Section s = top.sub("ring");
    std::string preset = c.ring.preset;
    s.read("preset", preset);
    c.ring = preset_recipe(preset);
    s.read("q0_pressure", c.ring.q0);
    s.read("S0_entropy", c.ring.S0);
    s.read("entropyAmplitude", c.ring.entropyAmplitude);
    s.read("flowBase_speed", c.ring.flowBase);
    s.read("flowShear_speed", c.ring.flowShear);
    s.read("shearWidth_length", c.ring.shearWidth);
    s.read("flowAxis", c.ring.flowAxis);
    s.read_vec3("H_field", c.ring.H);
    s.read_vec3("h_field", c.ring.h);
    s.read_vec3("E_field", c.ring.E);
    s.read("frontAmplitude_length", c.ring.frontAmplitude);
    s.read("frontMode", c.ring.frontMode);
    s.finish();
  }
  if (top.has("grid")) {
    Section s = top.sub("grid");
    s.read("nx1", c.grid.nx1);
    s.read("nx2", c.grid.nx2);
    s.read("nx3", c.grid.nx3);
    s.read("L1_length", c.grid.L1);
    s.read("L2_length", c.grid.L2);
    s.read("L3_length", c.grid.L3);
    s.read("dt_time", c.grid.dt);
    s.finish();
  }
  if (top.has("solver")) {
    Section s = top.sub("solver");
    s.read("cfl", c.solver.cfl);
    s.read("tEnd_time", c.solver.tEnd);
    s.read("snapshotEvery_steps", c.solver.snapshotEvery);
    s.read("blowupFactor", c.solver.blowupFactor);
    s.read("bcOuter", c.solver.bcOuter);
    s.read("scheme", c.solver.scheme);
    s.finish();
  }
  if (top.has("source")) {
    Section s = top.sub("source");
    s.read("amplitude", c.source.amplitude);
    s.read("centerX1_length", c.source.centerX1);
    s.read("width_length", c.source.width);
    s.read("duration_time", c.source.duration);
    s.finish();
  }
  if (top.has("modeScan")) {
    Section s = top.sub("modeScan");
    s.read("kMin_per_length", c.modeScan.kMin);
    s.read("kMax_per_length", c.modeScan.kMax);
    s.read("count", c.modeScan.count);
    s.read("angle_rad", c.modeScan.angle);
    s.read("n1", c.modeScan.n1);
    s.read("nWaves", c.modeScan.nWaves);
    s.read_list("sTension", c.modeScan.sTension);
    s.finish();
  }
  if (top.has("convergence")) {
    Section s = top.sub("convergence");
    s.read_list("resolutions", c.convergence.resolutions);
    s.read("tEnd_time", c.convergence.tEnd);
    s.read_list("constraintResolutions", c.convergence.constraintResolutions);
    s.read("constraintTEnd_time", c.convergence.constraintTEnd);
    s.read("nx3", c.convergence.nx3);
    s.read("L1_length", c.convergence.L1);
    s.finish();
  }
  if (top.has("audit")) {
    Section s = top.sub("audit");
    s.read("states", c.auditStates);
    s.finish();
  }
  top.finish();
  return c;
}

std::string ScenarioConfig::to_json() const {
  json j;
  j["kind"] = kind;
  j["seed"] = seed;
  j["output"] = output;
  j["suite"] = suite;
  j["physics"] = {{"epsilon", physics.epsilon}, {"sigmaTension", physics.sigmaTension}};
  j["eos"] = {{"gamma", eos.gamma}, {"entropyScale", eos.entropyScale}};
  j["ring"] = {{"preset", ring.preset},
               {"q0_pressure", ring.q0},
               {"S0_entropy", ring.S0},
               {"entropyAmplitude", ring.entropyAmplitude},
               {"flowBase_speed", ring.flowBase},
               {"flowShear_speed", ring.flowShear},
               {"shearWidth_length", ring.shearWidth},
               {"flowAxis", ring.flowAxis},
               {"H_field", vec_json(ring.H)},
               {"h_field", vec_json(ring.h)},
               {"E_field", vec_json(ring.E)},
               {"frontAmplitude_length", ring.frontAmplitude},
               {"frontMode", ring.frontMode}};
  j["grid"] = {{"nx1", grid.nx1},       {"nx2", grid.nx2},       {"nx3", grid.nx3},      {"L1_length", grid.L1},
               {"L2_length", grid.L2}, {"L3_length", grid.L3}, {"dt_time", grid.dt}};
  j["solver"] = {{"cfl", solver.cfl},
                 {"tEnd_time", solver.tEnd},
                 {"snapshotEvery_steps", solver.snapshotEvery},
                 {"blowupFactor", solver.blowupFactor},
                 {"bcOuter", solver.bcOuter},
                 {"scheme", solver.scheme}};
  j["source"] = {{"amplitude", source.amplitude},
                 {"centerX1_length", source.centerX1},
                 {"width_length", source.width},
                 {"duration_time", source.duration}};
  j["modeScan"] = {{"kMin_per_length", modeScan.kMin}, {"kMax_per_length", modeScan.kMax},
                   {"count", modeScan.count},          {"angle_rad", modeScan.angle},
                   {"n1", modeScan.n1},                {"nWaves", modeScan.nWaves},
                   {"sTension", modeScan.sTension}};
  j["convergence"] = {{"resolutions", convergence.resolutions},
                      {"tEnd_time", convergence.tEnd},
                      {"constraintResolutions", convergence.constraintResolutions},
                      {"constraintTEnd_time", convergence.constraintTEnd},
                      {"nx3", convergence.nx3},
                      {"L1_length", convergence.L1}};
  j["audit"] = {{"states", auditStates}};
  return j.dump(2);
}

void ScenarioConfig::validate() const {
  const auto& k = scenario_kinds();
  if (std::find(k.begin(), k.end(), kind) == k.end()) throw UsageError("unknown kind '" + kind + "'");
  physics.validate();
  grid.validate();
  solver_config().validate();
  if (!(source.width > 0.0)) throw UsageError("source.width_length must be positive");
  if (!(source.duration > 0.0)) throw UsageError("source.duration_time must be positive");
  if (auditStates < 1) throw UsageError("audit.states must be positive");
  if (modeScan.count < 2) throw UsageError("modeScan.count must be at least 2");
  if (!(modeScan.kMin > 0.0) || !(modeScan.kMax > modeScan.kMin))
    throw UsageError("modeScan needs 0 < kMin_per_length < kMax_per_length");
  for (double s : modeScan.sTension)
    if (!(s >= 0.0)) throw UsageError("modeScan.sTension entries must be nonnegative");
  if (convergence.resolutions.size() < 2) throw UsageError("convergence.resolutions needs at least two entries");
  if (convergence.constraintResolutions.size() < 2)
    throw UsageError("convergence.constraintResolutions needs at least two entries");
}

SolverConfig ScenarioConfig::solver_config() const {
  SolverConfig s = solver;
  s.grid = grid;
  return s;
}

Sources pulse_sources(const SourceSpec& spec, const GridSpec& g, const RingRecipe&) {
  auto shape = std::make_shared<Field1>(1, g.npts());
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k)
      for (int i = 0; i < g.n1p(); ++i) {
        const double d1 = g.x1_fluid(i) - spec.centerX1;
        const double d2 = g.x2(j) - 0.5 * g.L2;
        const double d3 = g.x3(k) - 0.5 * g.L3;
        (*shape)(0, g.point(i, j, k)) = std::exp(-(d1 * d1 + d2 * d2 + d3 * d3) / (spec.width * spec.width));
      }
  Sources src;
  const double amp = spec.amplitude, dur = spec.duration;
  src.fluid = [shape, amp, dur](double t, Field8& f) {
    f.setZero();
    if (t <= 0.0 || t >= dur) return;
    const double s = std::sin(std::numbers::pi * t / dur);
    const double a = amp * s * s;
    f.row(fluid::kV + 0) = a * shape->row(0);
    f.row(fluid::kV + 1) = 0.5 * a * shape->row(0);
    f.row(fluid::kV + 2) = 0.5 * a * shape->row(0);
    f.row(fluid::kS) = a * shape->row(0);
  };
  return src;
}

SimulationResult simulate(const ScenarioConfig& cfg) {
  cfg.validate();
  const BasicState ring = BasicState::build(cfg.ring, cfg.grid, cfg.eos, cfg.physics);
  SimulationResult r;
  r.K = ring.K;
  r.run = run_simulation(cfg.solver_config(), ring, pulse_sources(cfg.source, cfg.grid, cfg.ring));
  r.estimate = verify_estimate_54(r.run);
  return r;
}

AuditReport run_matrix_audit(std::uint64_t seed, int states) {
  std::mt19937_64 rng(seed);
  const EosModel eos;
  AuditReport rep;
  rep.states = states;
  rep.minA0Eigen = std::numeric_limits<double>::infinity();
  for (int s = 0; s < states; ++s) {
    const FluidState U = random_hyperbolic(rng, eos);
    const LiftAt lift{uniform(rng, -1.0, 1.0), uniform(rng, 0.5, 2.0), uniform(rng, -1.0, 1.0),
                      uniform(rng, -1.0, 1.0)};
    const Vec3 nu = random_unit(rng) * uniform(rng, 0.0, 0.999);
    const double eps = uniform(rng, 0.01, 0.5);
    const Vec3 vMinus = random_unit(rng) * uniform(rng, 0.0, 0.99 / eps);
    const Mat8 A0 = build_A0(U, eos);
    std::vector<Eigen::MatrixXd> ms{A0, build_boundary_fluid(U, eos, lift), build_secondary_boundary(vMinus, lift, eps)};
    for (int i = 1; i <= 3; ++i) {
      ms.push_back(build_Ai(U, eos, i));
      ms.push_back(build_Bj(i));
    }
    for (int j = 0; j <= 3; ++j) ms.push_back(build_secondary_symmetrizer(nu, j));
    for (const auto& m : ms) rep.allSymmetric = rep.allSymmetric && is_exactly_symmetric(m);
    const Eigen::VectorXd ev = symmetric_eigenvalues(A0);
    const double rel = ev[0] / ev.cwiseAbs().maxCoeff();
    rep.minA0Eigen = std::min(rep.minA0Eigen, rel);
    rep.a0Positive = rep.a0Positive && ev[0] > 0.0;
  }
  for (double mag : {0.9, 0.99, 1.01, 1.1}) {
    double mn = std::numeric_limits<double>::infinity();
    for (int r = 0; r < 20; ++r) {
      const Vec3 nu = random_unit(rng) * mag;
      mn = std::min(mn, symmetric_eigenvalues(build_secondary_symmetrizer(nu, 0))[0]);
    }
    const bool pos = mn > 0.0;
    rep.nuChecks.push_back({mag, mn, pos});
    rep.nuCriterion = rep.nuCriterion && (pos == (mag < 1.0));
  }
  return rep;
}

SpectralReport run_spectral_signatures(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const EosModel eos;
  SpectralReport rep;
  const int samples = 1000;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const FrontPoint fp{uniform(rng, -1.0, 1.0), uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    const MaxwellBoundary mb = build_boundary_maxwell(fp, uniform(rng, 0.01, 0.5));
    const Eigen::VectorXd num = symmetric_eigenvalues(mb.B);
    std::array<double, 6> cf = mb.eigs;
    std::sort(cf.begin(), cf.end());
    for (int k = 0; k < 6; ++k) rep.maxBoundaryEigenError = std::max(rep.maxBoundaryEigenError, std::abs(num[k] - cf[k]));
  }
  for (int s = 0; s < samples; ++s) {
    FluidState U = random_hyperbolic(rng, eos);
    const double d2 = uniform(rng, -1.0, 1.0), d3 = uniform(rng, -1.0, 1.0);
    const Vec3 N(1.0, -d2, -d3);
    Vec3 H = U.H - (U.H.dot(N) / N.squaredNorm()) * N;
    U.H = H;
    if (!check_hyperbolicity(U, eos)) continue;
    const LiftAt lift{U.v.dot(N), 1.0, d2, d3};
    const Mat8 M = build_boundary_fluid(U, eos, lift);
    const Inertia in = inertia(M);
    rep.fluidInertiaOk = rep.fluidInertiaOk && in.nNeg == 1 && in.nZero == 6 && in.nPos == 1;
    Vec8 u;
    for (int k = 0; k < 8; ++k) u[k] = uniform(rng, -1.0, 1.0);
    const double form = u.dot(M * u);
    const double expect = 2.0 * u[fluid::kQ] * u.segment<3>(fluid::kV).dot(N);
    rep.fluidFormError = std::max(rep.fluidFormError, std::abs(form - expect) / (u.squaredNorm() * (1.0 + M.norm())));
  }
  for (double eps : {0.01, 0.05, 0.1}) {
    SpectralReport::VacuumKernel vk{eps, 6, 0};
    for (int s = 0; s < samples; ++s) {
      const Vec3 v(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
      const double d2 = uniform(rng, -0.3, 0.3), d3 = uniform(rng, -0.3, 0.3);
      const Vec3 N(1.0, -d2, -d3);
      const LiftAt lift{v.dot(N), 1.0, d2, d3};
      const Inertia in = inertia(build_secondary_boundary(v, lift, eps));
      vk.minZeros = std::min(vk.minZeros, in.nZero);
      vk.maxZeros = std::max(vk.maxZeros, in.nZero);
    }
    rep.vacuum.push_back(vk);
  }
  return rep;
}

LinearizationReport run_linearization_check(const std::string& preset, std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  GridSpec g;
  g.nx1 = n;
  g.nx2 = n;
  g.nx3 = 8;
  PhysicsParams phys;
  phys.sigmaTension = 0.1;
  const EosModel eos;
  const BasicState ring = BasicState::build(preset_recipe(preset), g, eos, phys);

  LinearPerturbation pert = LinearPerturbation::zero(g);
  pert.U = random_smooth<8>(g, false, rng, 0.1);
  pert.dtU = random_smooth<8>(g, false, rng, 0.1);
  pert.V = random_smooth<6>(g, true, rng, 0.1);
  pert.dtV = random_smooth<6>(g, true, rng, 0.1);
  pert.phi = InterfaceField::from_phi(random_surface(g, rng, 0.05), random_surface(g, rng, 0.05), g);
  const Field3 vm = mirror_to_vacuum<8>(pert.U, g).middleRows<3>(fluid::kV);

  const Field8 linF = linearized_fluid_raw(pert.U, pert.dtU, pert.phi, ring);
  const Field6 linV = linearized_vacuum_raw(pert.V, pert.dtV, vm, pert.phi, ring);
  const Field4 linB = linearized_boundary(pert, ring);
  const SurfaceField linC = linearized_curvature(pert.phi.phi, ring.phi, g);

  const Field8 zero8 = Field8::Zero(8, g.npts());
  const Field6 zero6 = Field6::Zero(6, g.npts());
  const Field8 r0F = residual_fluid_nonlinear(ring.U, zero8, ring.phi, g, eos);
  const Field6 r0V = residual_vacuum_secondary(ring.V, zero6, ring.vMinus, ring.phi, g, phys.epsilon);
  const Field4 r0B = residual_boundary_nonlinear(fluid_trace<8>(ring.U, g), vacuum_trace<6>(ring.V, g), ring.phi, g, phys);
  const SurfaceField r0C = mean_curvature(ring.phi.phi, g);

  // Raw traces on the interface: good unknowns plus phi times the ring normal derivative.
  Field8 rawUf = fluid_trace<8>(pert.U, g);
  Field6 rawVf = vacuum_trace<6>(pert.V, g);
  const Field8 d1Uf = fluid_trace<8>(ring.d1U, g);
  const Field6 d1Vf = vacuum_trace<6>(ring.d1V, g);
  for (int c = 0; c < g.ncols(); ++c) {
    rawUf.col(c) += pert.phi.phi[c] * d1Uf.col(c);
    rawVf.col(c) += pert.phi.phi[c] * d1Vf.col(c);
  }

  LinearizationReport rep;
  rep.thetas = {1e-2, 1e-3, 1e-4};
  for (double th : rep.thetas) {
    const InterfaceField ph = InterfaceField::from_phi(ring.phi.phi + th * pert.phi.phi, ring.phi.dtPhi + th * pert.phi.dtPhi, g);
    const Field8 rF = residual_fluid_nonlinear(ring.U + th * pert.U, th * pert.dtU, ph, g, eos);
    const Field6 rV =
        residual_vacuum_secondary(ring.V + th * pert.V, th * pert.dtV, ring.vMinus + th * vm, ph, g, phys.epsilon);
    const Field4 rB = residual_boundary_nonlinear(fluid_trace<8>(ring.U, g) + th * rawUf,
                                                  vacuum_trace<6>(ring.V, g) + th * rawVf, ph, g, phys);
    const SurfaceField rC = mean_curvature(ph.phi, g);
    rep.fluidErr.push_back(((rF - r0F) / th - linF).cwiseAbs().maxCoeff() / std::max(1.0, linF.cwiseAbs().maxCoeff()));
    rep.vacuumErr.push_back(((rV - r0V) / th - linV).cwiseAbs().maxCoeff() / std::max(1.0, linV.cwiseAbs().maxCoeff()));
    rep.boundaryErr.push_back(((rB - r0B) / th - linB).cwiseAbs().maxCoeff() / std::max(1.0, linB.cwiseAbs().maxCoeff()));
    rep.curvatureErr.push_back(((rC - r0C) / th - linC).cwiseAbs().maxCoeff() / std::max(1.0, linC.cwiseAbs().maxCoeff()));
  }
  auto orders = [](const std::vector<double>& e) {
    std::vector<double> o;
    for (size_t k = 0; k + 1 < e.size(); ++k) o.push_back(order_of(e[k], e[k + 1], 10.0));
    return o;
  };
  rep.fluidOrder = orders(rep.fluidErr);
  rep.vacuumOrder = orders(rep.vacuumErr);
  rep.boundaryOrder = orders(rep.boundaryErr);
  rep.curvatureOrder = orders(rep.curvatureErr);
  return rep;
}

namespace {

// Smooth x3-invariant manufactured solution.
struct Manufactured {
  double k = 0.0;
  double om = 1.7;

  struct Val8 {
    Vec8 u, dt, d1, d2;
  };
  struct Val6 {
    Vec6 u, dt, d1, d2;
  };

  Val8 fluid(double t, double x1, double x2) const {
    Val8 r;
    for (int m = 0; m < 8; ++m) {
      const double a = 0.1 * (1.0 + 0.1 * m);
      const double th = om * t + k * x2 + 0.4 * m, ps = 1.3 * x1 + 0.2 * m;
      r.u[m] = a * std::sin(th) * std::cos(ps);
      r.dt[m] = a * om * std::cos(th) * std::cos(ps);
      r.d1[m] = -1.3 * a * std::sin(th) * std::sin(ps);
      r.d2[m] = a * k * std::cos(th) * std::cos(ps);
    }
    return r;
  }

  Val6 vacuum(double t, double x1, double x2) const {
    Val6 r;
    for (int m = 0; m < 6; ++m) {
      const double b = 0.1 * (1.0 + 0.05 * m);
      const double th = om * t + k * x2 + 0.3 * m, ps = 1.1 * x1 + 0.5 + 0.1 * m;
      r.u[m] = b * std::cos(th) * std::sin(ps);
      r.dt[m] = -b * om * std::sin(th) * std::sin(ps);
      r.d1[m] = 1.1 * b * std::cos(th) * std::cos(ps);
      r.d2[m] = -b * k * std::sin(th) * std::sin(ps);
    }
    return r;
  }

  // phi, d_t phi, d_2 phi, d_22 phi
  std::array<double, 4> front(double t, double x2) const {
    const double c = 0.05, th = om * t + k * x2 + 0.9;
    return {c * std::sin(th), c * om * std::cos(th), c * k * std::cos(th), -c * k * k * std::sin(th)};
  }
};

struct MmsData {
  GridSpec g;
  Manufactured ms;
  std::vector<Mat8, Eigen::aligned_allocator<Mat8>> A0, A1t, A2, Cp;
  std::vector<Mat6, Eigen::aligned_allocator<Mat6>> B0, B1t, B2;
  std::vector<Mat63, Eigen::aligned_allocator<Mat63>> Cm;
  double eps = 0.25, sigma = 0.0;
  SurfaceField jumpDq, d1vN;
  Field8 Ur;
  Field6 Vr;
};

SolverState mms_exact(const MmsData& d, double t) {
  const GridSpec& g = d.g;
  SolverState s = SolverState::zero(g);
  s.t = t;
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k) {
      for (int i = 0; i < g.n1p(); ++i) {
        const int p = g.point(i, j, k);
        s.U.col(p) = d.ms.fluid(t, g.x1_fluid(i), g.x2(j)).u;
        s.V.col(p) = d.ms.vacuum(t, g.x1_vacuum(i), g.x2(j)).u;
      }
      s.phi[g.col(j, k)] = d.ms.front(t, g.x2(j))[0];
    }
  return s;
}

Sources mms_sources(std::shared_ptr<const MmsData> d) {
  Sources src;
  src.fluid = [d](double t, Field8& f) {
    const GridSpec& g = d->g;
    for (int j = 0; j < g.nx2; ++j)
      for (int k = 0; k < g.nx3; ++k)
        for (int i = 0; i < g.n1p(); ++i) {
          const int p = g.point(i, j, k);
          const auto v = d->ms.fluid(t, g.x1_fluid(i), g.x2(j));
          f.col(p) = d->A0[p] * v.dt + d->A1t[p] * v.d1 + d->A2[p] * v.d2 + d->Cp[p] * v.u;
        }
  };
  src.vacuum = [d](double t, Field6& gv) {
    const GridSpec& g = d->g;
    for (int j = 0; j < g.nx2; ++j)
      for (int k = 0; k < g.nx3; ++k)
        for (int i = 0; i < g.n1p(); ++i) {
          const int p = g.point(i, j, k);
          const double x1 = g.x1_vacuum(i);
          const auto v = d->ms.vacuum(t, x1, g.x2(j));
          const Vec3 vm = d->ms.fluid(t, -x1, g.x2(j)).u.segment<3>(fluid::kV);
          gv.col(p) = d->eps * d->B0[p] * v.dt + d->B1t[p] * v.d1 + d->B2[p] * v.d2 + d->Cm[p] * vm;
        }
  };
  src.boundary = [d](double t, Field4& b) {
    const GridSpec& g = d->g;
    for (int j = 0; j < g.nx2; ++j)
      for (int k = 0; k < g.nx3; ++k) {
        const int c = g.col(j, k);
        const Eigen::Index p0 = static_cast<Eigen::Index>(c) * g.n1p();
        const Eigen::Index pN = p0 + g.nx1;
        const auto u = d->ms.fluid(t, 0.0, g.x2(j)).u;
        const auto v = d->ms.vacuum(t, 0.0, g.x2(j)).u;
        const auto f = d->ms.front(t, g.x2(j));
        const Vec3 hr = d->Vr.col(pN).segment<3>(vacuum::kh);
        const Vec3 Er = d->Vr.col(pN).segment<3>(vacuum::kE);
        const double vr2 = d->Ur(fluid::kV + 1, p0);
        b(0, c) = f[1] + vr2 * f[2] - d->d1vN[c] * f[0] - u[fluid::kV];
        b(1, c) = v[vacuum::kE + 1] - d->eps * hr[2] * f[1] + Er[0] * f[2];
        b(2, c) = v[vacuum::kE + 2] + d->eps * hr[1] * f[1];
        b(3, c) = u[fluid::kQ] - hr.dot(v.segment<3>(vacuum::kh)) + Er.dot(v.segment<3>(vacuum::kE)) +
                  d->jumpDq[c] * f[0] - d->sigma * f[3];
      }
  };
  src.outerFluid = [d](double t, Field8& go) {
    const GridSpec& g = d->g;
    for (int j = 0; j < g.nx2; ++j)
      for (int k = 0; k < g.nx3; ++k) go.col(g.col(j, k)) = d->ms.fluid(t, g.L1, g.x2(j)).u;
  };
  src.outerVacuum = [d](double t, Field6& go) {
    const GridSpec& g = d->g;
    for (int j = 0; j < g.nx2; ++j)
      for (int k = 0; k < g.nx3; ++k) go.col(g.col(j, k)) = d->ms.vacuum(t, -g.L1, g.x2(j)).u;
  };
  return src;
}

double solution_distance(const SolverState& a, const SolverState& b, const GridSpec& g) {
  const double sU = slab_sq<8>(Field8(a.U - b.U), g);
  const double sV = slab_sq<6>(Field6(a.V - b.V), g);
  const double sP = (a.phi - b.phi).squaredNorm() * surface_weight(g);
  return std::sqrt(sU + sV + sP);
}

}  // namespace

ConvergenceReport run_mms_convergence(const ConvergenceSpec& spec, const RingRecipe& recipe, const PhysicsParams& phys,
                                      const EosModel& eos) {
  require_flat(recipe, "manufactured-solution study");
  ConvergenceReport rep;
  for (int n : spec.resolutions) {
    auto d = std::make_shared<MmsData>();
    GridSpec& g = d->g;
    g.nx1 = n;
    g.nx2 = n;
    g.nx3 = spec.nx3;
    g.L1 = spec.L1;
    d->ms.k = 2.0 * std::numbers::pi / g.L2;
    const BasicState ring = BasicState::build(recipe, g, eos, phys);
    d->eps = phys.epsilon;
    d->sigma = phys.sigmaTension;
    d->jumpDq = ring.jumpDq;
    d->d1vN = ring.d1vN;
    d->Ur = ring.U;
    d->Vr = ring.V;
    for (Eigen::Index p = 0; p < g.npts(); ++p) {
      const PointMatrices8 m = fluid_matrices(ring.U.col(p), ring.liftPlus.at(p), eos);
      d->A0.push_back(m.A0);
      d->A1t.push_back(m.A1t);
      d->A2.push_back(m.A2);
      d->Cp.push_back(c_plus_matrix(ring, p));
      const PointMatrices6 w = vacuum_matrices(ring.vMinus.col(p), ring.liftMinus.at(p), phys.epsilon);
      d->B0.push_back(w.B0);
      d->B1t.push_back(w.B1t);
      d->B2.push_back(w.B2);
      d->Cm.push_back(c_minus_matrix(ring, p));
    }
    SolverConfig cfg;
    cfg.grid = g;
    cfg.tEnd = spec.tEnd;
    cfg.snapshotEvery = 1 << 30;
    cfg.allowLongRun = true;
    const SolverState init = mms_exact(*d, 0.0);
    const SemiDiscrete op(ring);
    const Sources src = mms_sources(d);
    const double dt0 = op.stable_dt(cfg.cfl);
    const int steps = static_cast<int>(std::ceil(spec.tEnd / dt0 - 1e-12));
    const double dt = spec.tEnd / steps;
    SolverState s = init;
    for (int k = 0; k < steps; ++k) s = advance(s, op, src, dt);
    rep.n.push_back(n);
    rep.error.push_back(solution_distance(s, mms_exact(*d, s.t), g));
  }
  for (size_t k = 0; k + 1 < rep.error.size(); ++k)
    rep.order.push_back(order_of(rep.error[k], rep.error[k + 1],
                                 static_cast<double>(rep.n[k + 1]) / rep.n[k]));
  return rep;
}

ConstraintStudy run_constraint_study(const ConvergenceSpec& spec, const RingRecipe& recipe, const PhysicsParams& phys,
                                     double tEnd, const EosModel& eos) {
  require_flat(recipe, "constraint study");
  // Compact polynomial bump, C^5 at its edge.
  auto bump = [](double r) { return std::abs(r) < 1.0 ? std::pow(1.0 - r * r, 6) : 0.0; };
  ConstraintStudy rep;
  for (int n : spec.constraintResolutions) {
    GridSpec g;
    g.nx1 = n;
    g.nx2 = n;
    g.nx3 = spec.nx3;
    g.L1 = 4.0;
    const BasicState ring = BasicState::build(recipe, g, eos, phys);
    const double kx = 2.0 * std::numbers::pi / g.L2;
    Field1 a(1, g.npts()), b(1, g.npts()), e(1, g.npts());
    SolverState init = SolverState::zero(g);
    for (int j = 0; j < g.nx2; ++j)
      for (int k = 0; k < g.nx3; ++k)
        for (int i = 0; i < g.n1p(); ++i) {
          const int p = g.point(i, j, k);
          const double xf = g.x1_fluid(i), xv = g.x1_vacuum(i), x2 = g.x2(j);
          a(0, p) = bump((xf - 1.5) / 1.1) * std::sin(kx * x2);
          b(0, p) = 0.3 * bump((xv + 1.55) / 1.25) * std::sin(kx * x2);
          e(0, p) = 0.3 * bump((xv + 1.6) / 1.2) * std::cos(kx * x2);
          const double blob = bump(std::hypot(xf - 1.5, x2 - 2.0) / 1.1);
          init.U(fluid::kQ, p) = 0.2 * blob;
          init.U(fluid::kS, p) = 0.1 * blob;
        }
    // Discrete curls of potentials supported away from the interface.
    init.U.row(fluid::kH + 0) = dtan<1>(a, g, 2);
    init.U.row(fluid::kH + 1) = -d1<1>(a, g);
    init.V.row(vacuum::kh + 0) = dtan<1>(b, g, 2);
    init.V.row(vacuum::kh + 1) = -d1<1>(b, g);
    init.V.row(vacuum::kE + 0) = dtan<1>(e, g, 2);
    init.V.row(vacuum::kE + 1) = -d1<1>(e, g);

    const SemiDiscrete op(ring);
    const Sources none;
    const int steps = std::max(1, static_cast<int>(std::ceil(tEnd / op.stable_dt(0.4))));
    const double dt = tEnd / steps;
    const double h2 = g.h1() * g.h1();
    auto level = [&](const SolverState& st) {
      SolverState rate = st;
      op.rhs(st, none, rate);
      const ConstraintReport c = constraints(to_perturbation(st, rate, g), ring);
      return std::max({c.maxDivFluid, c.maxDivVacH, c.maxDivVacE, c.maxTraceHN, c.maxTracehN});
    };
    SolverState s = init;
    const double first = level(s);
    double mx = first, bound = first / h2, last = first;
    for (int k = 0; k < steps; ++k) {
      s = advance(s, op, none, dt);
      if (k % 4 == 3 || k + 1 == steps) {
        last = level(s);
        mx = std::max(mx, last);
        bound = std::max(bound, last / (h2 * (1.0 + s.t)));
      }
    }
    rep.n.push_back(n);
    rep.initialMax.push_back(first);
    rep.finalMax.push_back(last);
    rep.maxOverRun.push_back(mx);
    rep.growthBound.push_back(bound);
  }
  for (size_t k = 0; k + 1 < rep.n.size(); ++k)
    rep.order.push_back(order_of(rep.maxOverRun[k], rep.maxOverRun[k + 1],
                                 static_cast<double>(rep.n[k + 1]) / rep.n[k]));
  return rep;
}

SuiteReport run_estimate_suite(const ScenarioConfig& base, int refine) {
  if (!(base.physics.sigmaTension > 0.0)) throw UsageError("the estimate suite needs sigmaTension > 0");
  SuiteReport rep;
  std::vector<Estimate54> all;
  for (const std::string& name : preset_names()) {
    ScenarioConfig c = base;
    c.ring = preset_recipe(name);
    SuiteEntry e;
    e.preset = name;
    e.coarse = simulate(c).estimate;
    c.grid.nx1 *= refine;
    c.grid.nx2 *= refine;
    c.grid.nx3 *= refine;
    e.fine = simulate(c).estimate;
    e.relativeChange = std::abs(e.fine.ratio - e.coarse.ratio) / std::max(e.coarse.ratio, 1e-300);
    all.push_back(e.coarse);
    all.push_back(e.fine);
    rep.entries.push_back(e);
  }
  rep.constant = fit_suite_constant(all);
  return rep;
}

std::vector<ModeScanCurve> run_mode_scan(const ScenarioConfig& cfg) {
  std::vector<ModeScanCurve> out;
  for (double s : cfg.modeScan.sTension) {
    ModeSpec m;
    m.ring = cfg.ring;
    m.sTension = s;
    m.epsilon = cfg.physics.epsilon;
    m.eos = cfg.eos;
    FrozenModeOptions opt;
    opt.n1 = cfg.modeScan.n1;
    opt.nWaves = cfg.modeScan.nWaves;
    out.push_back({s, growth_curve(m, cfg.modeScan.kMin, cfg.modeScan.kMax, cfg.modeScan.count, cfg.modeScan.angle, opt)});
  }
  return out;
}

bool increasing_from(const std::vector<GrowthPoint>& c, double fromK, double slack) {
  const GrowthPoint* prev = nullptr;
  for (const GrowthPoint& p : c) {
    if (p.k < fromK) continue;
    if (prev && !(p.growthRate > prev->growthRate + slack)) return false;
    prev = &p;
  }
  return true;
}

bool nonincreasing_from(const std::vector<GrowthPoint>& c, double fromK, double slack) {
  const GrowthPoint* prev = nullptr;
  for (const GrowthPoint& p : c) {
    if (p.k < fromK) continue;
    if (prev && p.growthRate > prev->growthRate + slack) return false;
    prev = &p;
  }
  return true;
}

}  // namespace mhdvac
