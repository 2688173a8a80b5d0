#include "cli_runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mhdvac/errors.hpp"
#include "mhdvac/scenario.hpp"
#include "mhdvac/symmetrizers.hpp"

namespace mhdvac::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw UsageError("cannot write " + p.string());
  os << text;
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw UsageError("config file '" + path + "' cannot be opened");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int refine = 1;
  std::optional<double> s;
};

void apply_refine(ScenarioConfig& c, int r) {
  if (r == 1) return;
  c.grid.nx1 *= r;
  c.grid.nx2 *= r;
  c.grid.nx3 *= r;
  c.modeScan.n1 *= r;
  for (int& n : c.convergence.resolutions) n *= r;
  for (int& n : c.convergence.constraintResolutions) n *= r;
}

ScenarioConfig resolve(const Options& o, const std::string& kind) {
  ScenarioConfig c = ScenarioConfig::parse(read_text(o.config));
  c.kind = kind;
  if (o.seed) c.seed = *o.seed;
  if (!o.out.empty()) c.output = o.out;
  if (o.s) {
    c.physics.sigmaTension = *o.s;
    c.modeScan.sTension = {*o.s};
  }
  apply_refine(c, o.refine);
  c.validate();
  return c;
}

fs::path prepare(const ScenarioConfig& c) {
  fs::path dir(c.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("output directory '" + c.output + "' cannot be created");
  write_text(dir / "run.json", c.to_json() + "\n");
  return dir;
}

json estimate_json(const Estimate54& e) {
  return {{"lhs", e.lhs}, {"rhs", e.rhs}, {"ratio", e.ratio}, {"violation", e.violation}};
}

void write_fields(const fs::path& dir, const SolverState& s, const GridSpec& g) {
  std::ofstream os(dir / "fields.bin", std::ios::binary);
  if (!os) throw UsageError("cannot write fields.bin");
  os.write(reinterpret_cast<const char*>(s.U.data()), static_cast<std::streamsize>(s.U.size() * sizeof(double)));
  os.write(reinterpret_cast<const char*>(s.V.data()), static_cast<std::streamsize>(s.V.size() * sizeof(double)));
  os.write(reinterpret_cast<const char*>(s.phi.data()), static_cast<std::streamsize>(s.phi.size() * sizeof(double)));
  const long long npts = g.npts();
  const long long nc = g.ncols();
  json h;
  h["dtype"] = "f64";
  h["order"] = "row-major";
  h["endian"] = "little";
  h["t"] = s.t;
  h["grid"] = {{"nx1", g.nx1}, {"nx2", g.nx2}, {"nx3", g.nx3}, {"L1_length", g.L1}, {"L2_length", g.L2},
               {"L3_length", g.L3}};
  h["pointIndex"] = "p = (j * nx3 + k) * (nx1 + 1) + i";
  h["arrays"] = json::array({
      {{"name", "fluid"}, {"shape", {npts, 8}}, {"offset", 0}},
      {{"name", "vacuum"}, {"shape", {npts, 6}}, {"offset", npts * 8 * 8}},
      {{"name", "front"}, {"shape", {nc}}, {"offset", npts * 14 * 8}},
  });
  write_text(dir / "fields.json", h.dump(2) + "\n");
}

int cmd_audit(const ScenarioConfig& c) {
  const fs::path dir = prepare(c);
  const AuditReport a = run_matrix_audit(c.seed, c.auditStates);
  const SpectralReport sp = run_spectral_signatures(c.seed);
  json j;
  j["states"] = a.states;
  j["allSymmetric"] = a.allSymmetric;
  j["a0Positive"] = a.a0Positive;
  j["minA0EigenRelative"] = a.minA0Eigen;
  j["secondarySymmetrizer"] = json::array();
  for (const auto& n : a.nuChecks)
    j["secondarySymmetrizer"].push_back({{"nu", n.nu}, {"minEigen", n.minEigen}, {"positive", n.positive}});
  j["secondaryCriterion"] = a.nuCriterion;
  j["spectral"] = {{"samples", sp.samples},
                   {"maxwellEigenError", sp.maxBoundaryEigenError},
                   {"fluidInertiaOk", sp.fluidInertiaOk},
                   {"fluidFormError", sp.fluidFormError}};
  j["spectral"]["vacuumZeroCount"] = json::array();
  for (const auto& v : sp.vacuum)
    j["spectral"]["vacuumZeroCount"].push_back({{"epsilon", v.eps}, {"min", v.minZeros}, {"max", v.maxZeros}});
  write_text(dir / "audit.json", j.dump(2) + "\n");

  // Closed-form Maxwell boundary spectrum along a sweep of front slopes.
  std::ostringstream os;
  os << "slope,lambda1,lambda2,lambda3,lambda4,lambda5,lambda6\n";
  for (int k = 0; k <= 40; ++k) {
    const double d2 = -2.0 + 0.1 * k;
    MaxwellBoundary mb = build_boundary_maxwell(FrontPoint{0.0, d2, 0.0}, c.physics.epsilon);
    std::sort(mb.eigs.begin(), mb.eigs.end());
    os << num(d2);
    for (double e : mb.eigs) os << ',' << num(e);
    os << '\n';
  }
  write_text(dir / "boundary_spectrum.csv", os.str());
  const bool ok = a.allSymmetric && a.a0Positive && a.nuCriterion;
  std::cout << "matrix-audit: " << (ok ? "ok" : "FAILED") << "\n";
  return kOk;
}

int cmd_mode_scan(const ScenarioConfig& c) {
  const fs::path dir = prepare(c);
  const std::vector<ModeScanCurve> curves = run_mode_scan(c);
  std::ostringstream os;
  os << "k,growthRate,sTension\n";
  for (const auto& cv : curves)
    for (const auto& p : cv.points) os << num(p.k) << ',' << num(p.growthRate) << ',' << num(cv.sTension) << '\n';
  write_text(dir / "growth.csv", os.str());
  for (const auto& cv : curves) {
    double mx = -1e300;
    for (const auto& p : cv.points) mx = std::max(mx, p.growthRate);
    std::cout << "mode-scan s=" << num(cv.sTension) << " max growth " << num(mx) << "\n";
  }
  return kOk;
}

int cmd_simulate(const ScenarioConfig& c, bool verify) {
  const fs::path dir = prepare(c);
  const SimulationResult r = simulate(c);
  write_text(dir / "series.csv", r.run.series_csv());
  write_fields(dir, r.run.final, c.grid);
  json j = estimate_json(r.estimate);
  j["ringBound"] = r.K;
  j["steps"] = r.run.steps;
  j["dt"] = r.run.dt;
  j["maxConstraint"] = r.run.maxConstraint;
  write_text(dir / "estimate.json", j.dump(2) + "\n");
  std::cout << (verify ? "verify" : "simulate") << ": " << r.run.steps << " steps, ratio " << num(r.estimate.ratio)
            << "\n";
  if (verify && c.suite) {
    const SuiteReport s = run_estimate_suite(c, 2);
    std::ostringstream os;
    os << "preset,coarseLhs,coarseRhs,coarseRatio,fineLhs,fineRhs,fineRatio,relativeChange\n";
    for (const auto& e : s.entries) {
      os << e.preset << ',' << num(e.coarse.lhs) << ',' << num(e.coarse.rhs) << ',' << num(e.coarse.ratio) << ','
         << num(e.fine.lhs) << ',' << num(e.fine.rhs) << ',' << num(e.fine.ratio) << ',' << num(e.relativeChange)
         << '\n';
    }
    write_text(dir / "suite.csv", os.str());
    write_text(dir / "suite.json", json{{"constant", s.constant}}.dump(2) + "\n");
    std::cout << "verify suite: constant " << num(s.constant) << "\n";
  }
  return kOk;
}

int cmd_convergence(const ScenarioConfig& c) {
  const fs::path dir = prepare(c);
  const ConvergenceReport r = run_mms_convergence(c.convergence, c.ring, c.physics, c.eos);
  std::ostringstream os;
  os << "n,error,order\n";
  for (size_t k = 0; k < r.n.size(); ++k)
    os << r.n[k] << ',' << num(r.error[k]) << ',' << (k == 0 ? std::string("") : num(r.order[k - 1])) << '\n';
  write_text(dir / "convergence.csv", os.str());
  const ConstraintStudy s = run_constraint_study(c.convergence, preset_recipe("tangentialH"), c.physics, c.convergence.constraintTEnd, c.eos);
  std::ostringstream cs;
  cs << "n,initialMax,finalMax,maxOverRun,order,growthBound\n";
  for (size_t k = 0; k < s.n.size(); ++k)
    cs << s.n[k] << ',' << num(s.initialMax[k]) << ',' << num(s.finalMax[k]) << ',' << num(s.maxOverRun[k]) << ','
       << (k == 0 ? std::string("") : num(s.order[k - 1])) << ',' << num(s.growthBound[k]) << '\n';
  write_text(dir / "constraints.csv", cs.str());
  std::cout << "convergence: finest error " << num(r.error.back()) << "\n";
  return kOk;
}

void report(const std::string& kind, const std::string& message, const std::string& outDir) {
  const json j{{"status", "error"}, {"category", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
  if (outDir.empty()) return;
  std::error_code ec;
  fs::create_directories(outDir, ec);
  if (!fs::is_directory(outDir, ec)) return;
  std::ofstream os(fs::path(outDir) / "error.json");
  if (os) os << j.dump(2) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Linearized plasma-vacuum interface laboratory"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> subs{
      {"matrix-audit", "symmetry, positivity and boundary spectra of the coefficient matrices"},
      {"mode-scan", "growth rate of single tangential modes over a wavenumber range"},
      {"simulate", "time-dependent run with energy and constraint diagnostics"},
      {"verify", "simulate and evaluate the a priori estimate ratio"},
      {"convergence", "manufactured-solution and constraint refinement studies"}};
  for (const auto& [name, help] : subs) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--config", o.config, "JSON config file")->required();
    s->add_option("--out", o.out, "output directory");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--refine", o.refine, "grid multiplier")->check(CLI::IsMember({1, 2, 4}));
    s->add_option("--s", o.s, "surface tension override");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report("validation", e.what(), "");
    return kValidation;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  const std::string kind = sub == "verify" ? "verify-54" : sub;
  std::string outDir = o.out;
  try {
    const ScenarioConfig c = resolve(o, kind);
    outDir = c.output;
    if (kind == "matrix-audit") return cmd_audit(c);
    if (kind == "mode-scan") return cmd_mode_scan(c);
    if (kind == "simulate") return cmd_simulate(c, false);
    if (kind == "verify-54") return cmd_simulate(c, true);
    return cmd_convergence(c);
  } catch (const UsageError& e) {
    report("validation", e.what(), outDir);
    return kValidation;
  } catch (const DomainError& e) {
    report("validation", e.what(), outDir);
    return kValidation;
  } catch (const NumericalError& e) {
    report("numerical", e.what(), outDir);
    return kNumerical;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace mhdvac::cli
