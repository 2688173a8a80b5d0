#include "mhdvac/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mhdvac/interface_geometry.hpp"
#include "mhdvac/symmetrizers.hpp"

namespace mhdvac {

namespace {

// 5-point Gauss-Legendre rule on [-1, 1].
constexpr double kGLx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                            0.9061798459386640};
constexpr double kGLw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                            0.2369268850561891};

// Integral of 1 - S(y) over [0, y1], composite Gauss-Legendre.
double flat_integral(double y1) {
  const int pieces = 32;
  const double hh = y1 / pieces;
  double s = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double a = k * hh;
    for (int q = 0; q < 5; ++q) s += kGLw[q] * (1.0 - transition(a + 0.5 * hh * (kGLx[q] + 1.0)));
  }
  return 0.5 * hh * s;
}

}  // namespace

double conormal_sigma(double x1) {
  if (x1 <= 0.5) return x1;
  if (x1 >= 1.5) return 1.0;
  return 0.5 + flat_integral(x1 - 0.5);
}

double conormal_sigma_derivative(double x1) {
  if (x1 <= 0.5) return 1.0;
  if (x1 >= 1.5) return 0.0;
  return 1.0 - transition(x1 - 0.5);
}

double slab_integral(const Field1& density, const GridSpec& g) {
  double s = 0.0;
  const int n = g.n1p();
  for (int c = 0; c < g.ncols(); ++c) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += trapezoid_weight(i, g) * density(0, static_cast<Eigen::Index>(c) * n + i);
    s += col;
  }
  return s * surface_weight(g);
}

double h1_density_vacuum(const Field6& V, const Field6& dtV, const GridSpec& g) {
  return slab_sq<6>(V, g) + slab_sq<6>(dtV, g) + slab_sq<6>(d1<6>(V, g), g) + slab_sq<6>(dtan<6>(V, g, 2), g) +
         slab_sq<6>(dtan<6>(V, g, 3), g);
}

double front_density(const InterfaceField& phi, const GridSpec& g) {
  const SurfaceField w[3] = {phi.phi, dsurf(phi.phi, g, 2), dsurf(phi.phi, g, 3)};
  const SurfaceField wt[3] = {phi.dtPhi, dsurf(phi.dtPhi, g, 2), dsurf(phi.dtPhi, g, 3)};
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    s += w[k].squaredNorm() + wt[k].squaredNorm() + dsurf(w[k], g, 2).squaredNorm() +
         dsurf(w[k], g, 3).squaredNorm();
  }
  return s * surface_weight(g);
}

double norm_H1tan(const std::vector<double>& times, const std::vector<Field8>& u, const std::vector<Field8>& dtU,
                  const GridSpec& g) {
  if (times.size() != u.size() || u.size() != dtU.size()) throw UsageError("norm_H1tan: history sizes differ");
  if (times.size() < 2) throw UsageError("norm_H1tan: at least two time levels are required");
  double s = 0.0;
  double prev = h1tan_density<8>(u[0], dtU[0], g);
  for (size_t k = 1; k < times.size(); ++k) {
    const double cur = h1tan_density<8>(u[k], dtU[k], g);
    s += 0.5 * (times[k] - times[k - 1]) * (prev + cur);
    prev = cur;
  }
  return std::sqrt(s);
}

EnergyParts energy_parts(const Field8& U, const Field6& V, const BasicState& ring) {
  const GridSpec& g = ring.grid;
  Field1 df(1, g.npts()), dv(1, g.npts());
  for (Eigen::Index p = 0; p < g.npts(); ++p) {
    const Mat8 A0 = to_eigen(a0_t(as_array(ring.U.col(p)), ring.eos));
    df(0, p) = U.col(p).dot(A0 * U.col(p));
    const Vec3 nu = ring.phys.epsilon * ring.vMinus.col(p);
    dv(0, p) = V.col(p).dot(build_secondary_symmetrizer(nu, 0) * V.col(p));
  }
  return {slab_integral(df, g), slab_integral(dv, g)};
}

double energy_I(const LinearPerturbation& pert, const BasicState& ring) {
  const EnergyParts e = energy_parts(pert.U, pert.V, ring);
  return e.fluid + e.vacuum;
}

EnergyReport energy_report(const LinearPerturbation& pert, const BasicState& ring) {
  const GridSpec& g = ring.grid;
  EnergyReport r;
  const EnergyParts e = energy_parts(pert.U, pert.V, ring);
  r.Ifluid = e.fluid;
  r.Ivac = e.vacuum;
  r.I = e.fluid + e.vacuum;
  const EnergyParts e0 = energy_parts(pert.dtU, pert.dtV, ring);
  const EnergyParts e2 = energy_parts(dtan<8>(pert.U, g, 2), dtan<6>(pert.V, g, 2), ring);
  const EnergyParts e3 = energy_parts(dtan<8>(pert.U, g, 3), dtan<6>(pert.V, g, 3), ring);
  r.Iell = {e0.fluid + e0.vacuum, e2.fluid + e2.vacuum, e3.fluid + e3.vacuum};
  double surf = 0.0;
  for (int c = 0; c < g.ncols(); ++c) {
    const double nn = std::sqrt(1.0 + ring.phi.d2Phi[c] * ring.phi.d2Phi[c] + ring.phi.d3Phi[c] * ring.phi.d3Phi[c]);
    const double gp = pert.phi.d2Phi[c] * pert.phi.d2Phi[c] + pert.phi.d3Phi[c] * pert.phi.d3Phi[c];
    surf += gp / (nn * nn * nn);
  }
  r.surfTerm = ring.phys.sigmaTension * surf * surface_weight(g);
  r.Qbnd = boundary_form_Q(pert, ring).Qraw.sum() * surface_weight(g);
  r.mu = ring.mu;
  return r;
}

BoundaryForm boundary_form_Q(const LinearPerturbation& pert, const BasicState& ring) {
  const GridSpec& g = ring.grid;
  const int nc = g.ncols();
  const double eps = ring.phys.epsilon;
  BoundaryForm q;
  q.Qraw.resize(nc);
  q.Qfluid.resize(nc);
  q.Qvac.resize(nc);
  q.surfFlux.resize(nc);
  q.muTerm.resize(nc);
  SurfaceField flux2(nc), flux3(nc);
  const SurfaceField d2t = dsurf(pert.phi.dtPhi, g, 2), d3t = dsurf(pert.phi.dtPhi, g, 3);
  for (int c = 0; c < nc; ++c) {
    const Eigen::Index p0 = static_cast<Eigen::Index>(c) * g.n1p();
    const Eigen::Index pN = p0 + g.nx1;
    const Vec8 u = pert.U.col(p0);
    const Vec6 v = pert.V.col(pN);
    const Mat8 A1t = fluid_matrices(ring.U.col(p0), ring.liftPlus.at(p0), ring.eos).A1t;
    const Mat6 B1t = vacuum_matrices(ring.vMinus.col(pN), ring.liftMinus.at(pN), eps).B1t;
    q.Qfluid[c] = -u.dot(A1t * u);
    q.Qvac[c] = v.dot(B1t * v) / eps;
    q.Qraw[c] = q.Qfluid[c] + q.Qvac[c];

    const Vec2 gphi(pert.phi.d2Phi[c], pert.phi.d3Phi[c]);
    const Vec2 gdt(d2t[c], d3t[c]);
    q.surfFlux[c] = 2.0 * ring.phys.sigmaTension * (ring.curv.at(c) * gphi).dot(gdt);

    const NormalTangents nt = normal_tangents(ring.phi.d2Phi[c], ring.phi.d3Phi[c]);
    const double EN = v.segment<3>(vacuum::kE).dot(nt.N);
    const double dtEN = pert.dtV.col(pN).segment<3>(vacuum::kE).dot(nt.N);
    const double mu = ring.mu[c];
    const double ph = pert.phi.phi[c];
    q.muTerm[c] = mu * (pert.phi.dtPhi[c] * EN + ph * dtEN);
    const double dtr = ring.phi.dtPhi[c];
    const Vec3 hd = v.segment<3>(vacuum::kh);
    flux2[c] = mu * ph * (v[vacuum::kE + 1] * dtr - hd.dot(nt.tau3));
    flux3[c] = mu * ph * (v[vacuum::kE + 2] * dtr + hd.dot(nt.tau2));
  }
  q.tanFlux = dsurf(flux2, g, 2) + dsurf(flux3, g, 3);
  q.lower = q.Qraw - q.surfFlux - q.muTerm - q.tanFlux;
  q.mismatch = q.lower.sum() * surface_weight(g);
  return q;
}

Estimate54 verify_estimate_54(const RunArtifact& run, double tol) {
  Estimate54 e;
  e.lhs = run.estimate.lhs();
  e.rhs = run.estimate.rhs();
  if (e.rhs > 0.0) {
    e.ratio = e.lhs / e.rhs;
  } else {
    e.violation = e.lhs > tol;
  }
  return e;
}

double fit_suite_constant(const std::vector<Estimate54>& runs) {
  double c = 0.0;
  for (const Estimate54& e : runs) {
    if (e.violation) return std::numeric_limits<double>::infinity();
    c = std::max(c, e.ratio);
  }
  return c;
}

}  // namespace mhdvac
