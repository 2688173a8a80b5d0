#include "mhdvac/solver.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "mhdvac/energy.hpp"
#include "mhdvac/errors.hpp"
#include "mhdvac/symmetrizers.hpp"

namespace mhdvac {

namespace {

constexpr int kF = 5 * 64;       // doubles per fluid point
constexpr int kVac = 4 * 36 + 18;  // doubles per vacuum point

// y -= A x for a column-major R x C block.
template <int R, int C, class S>
inline void mv_sub(const double* A, const S* x, S* y) {
  for (int j = 0; j < C; ++j) {
    const S xj = x[j];
    const double* a = A + j * R;
    for (int i = 0; i < R; ++i) y[i] -= a[i] * xj;
  }
}

template <int R, int C, class S>
inline void mv_add(const double* A, const S* x, S* y) {
  for (int j = 0; j < C; ++j) {
    const S xj = x[j];
    const double* a = A + j * R;
    for (int i = 0; i < R; ++i) y[i] += a[i] * xj;
  }
}

template <int N>
void store(const Eigen::Matrix<double, N, N>& m, double* dst) {
  Eigen::Map<Eigen::Matrix<double, N, N>> out(dst);
  out = m;
}

// Largest |lambda| of the pencil (A, B) with B symmetric positive definite.
template <int N>
double pencil_radius(const Eigen::Matrix<double, N, N>& A, const Eigen::LLT<Eigen::Matrix<double, N, N>>& llt) {
  Eigen::Matrix<double, N, N> X = llt.matrixL().solve(A);
  Eigen::Matrix<double, N, N> Y = llt.matrixL().solve(X.transpose());
  Y = 0.5 * (Y + Y.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> es(Y, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

template <int N>
Eigen::Matrix<double, N, N> projector(const Eigen::Matrix<double, N, N>& A, int sign) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> es(A);
  const double tol = 1e-8 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::Matrix<double, N, N> P = Eigen::Matrix<double, N, N>::Zero();
  for (int k = 0; k < N; ++k) {
    const double l = es.eigenvalues()[k];
    if ((sign > 0 && l > tol) || (sign < 0 && l < -tol)) P += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();
  }
  return P;
}

}  // namespace

void SolverConfig::validate() const {
  grid.validate();
  if (!(cfl > 0.0) || cfl > kCflMax) throw UsageError("cfl must be in (0, 0.4]");
  if (!(tEnd > 0.0)) throw UsageError("tEnd_time must be positive");
  if (bcOuter != "absorbing") throw UsageError("bcOuter must be 'absorbing'");
  if (scheme != "ssprk3") throw UsageError("scheme must be 'ssprk3'");
  if (snapshotEvery < 1) throw UsageError("snapshotEvery must be at least 1");
}

SolverState SolverState::zero(const GridSpec& g) {
  return {Field8::Zero(8, g.npts()), Field6::Zero(6, g.npts()), SurfaceField::Zero(g.ncols()), 0.0};
}

SemiDiscrete::SemiDiscrete(const BasicState& ring) : ring_(ring) {
  const GridSpec& g = ring.grid;
  n_ = g.n1p();
  invH0_ = 1.0 / (g.h1() * sbp::kNorm[0]);
  eps_ = ring.phys.epsilon;
  sigma_ = ring.phys.sigmaTension;
  const Eigen::Index np = g.npts();
  fluid_.resize(static_cast<size_t>(np) * kF);
  vac_.resize(static_cast<size_t>(np) * kVac);
  const double invh[3] = {1.0 / g.h1(), 1.0 / g.h2(), 1.0 / g.h3()};

  for (Eigen::Index p = 0; p < np; ++p) {
    const PointMatrices8 m = fluid_matrices(ring.U.col(p), ring.liftPlus.at(p), ring.eos);
    const Eigen::LLT<Mat8> llt(m.A0);
    if (llt.info() != Eigen::Success) throw NumericalError("fluid symmetrizer not positive definite");
    const Mat8 A0inv = llt.solve(Mat8::Identity());
    double* dst = fluid_.data() + p * kF;
    store<8>(A0inv * m.A1t, dst);
    store<8>(A0inv * m.A2, dst + 64);
    store<8>(A0inv * m.A3, dst + 128);
    store<8>(A0inv * c_plus_matrix(ring, p), dst + 192);
    store<8>(A0inv, dst + 256);
    const double r1 = pencil_radius<8>(m.A1t, llt);
    const double sF = r1 * invh[0] + pencil_radius<8>(m.A2, llt) * invh[1] + pencil_radius<8>(m.A3, llt) * invh[2];

    const PointMatrices6 w = vacuum_matrices(ring.vMinus.col(p), ring.liftMinus.at(p), eps_);
    const Mat6 eB0 = eps_ * w.B0;
    const Eigen::LLT<Mat6> lv(eB0);
    if (lv.info() != Eigen::Success) throw NumericalError("vacuum symmetrizer not positive definite");
    const Mat6 B0inv = lv.solve(Mat6::Identity());
    double* dv = vac_.data() + p * kVac;
    store<6>(B0inv * w.B1t, dv);
    store<6>(B0inv * w.B2, dv + 36);
    store<6>(B0inv * w.B3, dv + 72);
    store<6>(B0inv, dv + 108);
    Eigen::Map<Mat63>(dv + 144) = B0inv * c_minus_matrix(ring, p);
    const double q1 = pencil_radius<6>(w.B1t, lv);
    const double sV = q1 * invh[0] + pencil_radius<6>(w.B2, lv) * invh[1] + pencil_radius<6>(w.B3, lv) * invh[2];

    spectralSum_ = std::max({spectralSum_, sF, sV});
    maxSpeed_ = std::max({maxSpeed_, r1, q1});
  }

  const int nc = g.ncols();
  outF_.resize(nc);
  outV_.resize(nc);
  iface_.resize(nc);
  for (int c = 0; c < nc; ++c) {
    const Eigen::Index pN = static_cast<Eigen::Index>(c) * n_ + g.nx1;
    const Eigen::Index p0 = static_cast<Eigen::Index>(c) * n_;
    {
      const PointMatrices8 m = fluid_matrices(ring.U.col(pN), ring.liftPlus.at(pN), ring.eos);
      const Mat8 A0inv = Eigen::Map<const Mat8>(fluid_.data() + pN * kF + 256);
      outF_[c] = invH0_ * A0inv * m.A1t * projector<8>(m.A1t, -1);
      const PointMatrices6 w = vacuum_matrices(ring.vMinus.col(p0), ring.liftMinus.at(p0), eps_);
      const Mat6 B0inv = Eigen::Map<const Mat6>(vac_.data() + p0 * kVac + 108);
      outV_[c] = invH0_ * B0inv * w.B1t * projector<6>(w.B1t, +1);
    }

    Interface& it = iface_[c];
    const NormalTangents nt = normal_tangents(ring.phi.d2Phi[c], ring.phi.d3Phi[c]);
    it.N = nt.N;
    it.tau2 = nt.tau2;
    it.tau3 = nt.tau3;
    it.dtPhiRing = ring.phi.dtPhi[c];
    it.hr = ring.V.col(pN).segment<3>(vacuum::kh);
    it.Er = ring.V.col(pN).segment<3>(vacuum::kE);
    it.vr2 = ring.U(fluid::kV + 1, p0);
    it.vr3 = ring.U(fluid::kV + 2, p0);

    const PointMatrices8 m = fluid_matrices(ring.U.col(p0), ring.liftPlus.at(p0), ring.eos);
    Eigen::SelfAdjointEigenSolver<Mat8> ef(m.A1t);
    const double tolF = 1e-8 * std::max(1.0, ef.eigenvalues().cwiseAbs().maxCoeff());
    int nPos = 0;
    for (int k = 0; k < 8; ++k) nPos += ef.eigenvalues()[k] > tolF;
    if (nPos != 1) {
      std::ostringstream os;
      os << "fluid boundary matrix has " << nPos << " incoming directions at column " << c << " (expected 1)";
      throw NumericalError(os.str());
    }
    it.satQ = Eigen::Map<const Mat8>(fluid_.data() + p0 * kF + 256) * m.A1t.col(fluid::kQ);

    const PointMatrices6 w = vacuum_matrices(ring.vMinus.col(pN), ring.liftMinus.at(pN), eps_);
    Eigen::SelfAdjointEigenSolver<Mat6> ev(w.B1t);
    const double tolV = 1e-8 * std::max(1.0, ev.eigenvalues().cwiseAbs().maxCoeff());
    if (!(ev.eigenvalues()[1] < -tolV) || ev.eigenvalues()[2] < -tolV) {
      std::ostringstream os;
      os << "vacuum boundary matrix does not have two incoming directions at column " << c;
      throw NumericalError(os.str());
    }
    it.s1 = ev.eigenvectors().col(0);
    it.s2 = ev.eigenvectors().col(1);
    const Mat6 Q1 = Eigen::Map<const Mat6>(vac_.data() + pN * kVac);
    it.sat1 = Q1 * it.s1;
    it.sat2 = Q1 * it.s2;

    const double e = eps_;
    auto rowE = [&](const Vec6& s, const Vec3& tau, double sgn, int hIdx) {
      return s.segment<3>(vacuum::kE).dot(tau) + sgn * e * it.dtPhiRing * s[vacuum::kh + hIdx];
    };
    auto row4 = [&](const Vec6& s) {
      return -it.hr.dot(s.segment<3>(vacuum::kh)) + it.Er.dot(s.segment<3>(vacuum::kE));
    };
    it.M.setZero();
    it.M(0, 3) = 1.0;
    it.M(1, 1) = rowE(it.s1, it.tau2, -1.0, 2);
    it.M(1, 2) = rowE(it.s2, it.tau2, -1.0, 2);
    it.M(1, 3) = -e * it.hr[2];
    it.M(2, 1) = rowE(it.s1, it.tau3, +1.0, 1);
    it.M(2, 2) = rowE(it.s2, it.tau3, +1.0, 1);
    it.M(2, 3) = e * it.hr[1];
    it.M(3, 0) = 1.0;
    it.M(3, 1) = row4(it.s1);
    it.M(3, 2) = row4(it.s2);
    it.Minv = Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix4d>(it.M).pseudoInverse();
  }
}

template <class S>
void SemiDiscrete::column_rhs(int c, const ColumnIn<S>& in, ColumnOut<S>& out) const {
  const GridSpec& g = ring_.grid;
  const int n = n_;
  thread_local std::vector<S> d1u, d1v;
  d1u.resize(static_cast<size_t>(n) * 8);
  d1v.resize(static_cast<size_t>(n) * 6);
  const double invh = 1.0 / g.h1();
  sbp::d1_column<8, S>(in.U, d1u.data(), n, invh);
  sbp::d1_column<6, S>(in.V, d1v.data(), n, invh);
  const Eigen::Index base = static_cast<Eigen::Index>(c) * n;

  for (int i = 0; i < n; ++i) {
    const double* P = fluid_.data() + (base + i) * kF;
    S* ut = out.Ut + i * 8;
    for (int m = 0; m < 8; ++m) ut[m] = S(0.0);
    mv_sub<8, 8, S>(P, d1u.data() + i * 8, ut);
    mv_sub<8, 8, S>(P + 64, in.D2U + i * 8, ut);
    mv_sub<8, 8, S>(P + 128, in.D3U + i * 8, ut);
    mv_sub<8, 8, S>(P + 192, in.U + i * 8, ut);

    const double* Q = vac_.data() + (base + i) * kVac;
    S* vt = out.Vt + i * 6;
    for (int m = 0; m < 6; ++m) vt[m] = S(0.0);
    mv_sub<6, 6, S>(Q, d1v.data() + i * 6, vt);
    mv_sub<6, 6, S>(Q + 36, in.D2V + i * 6, vt);
    mv_sub<6, 6, S>(Q + 72, in.D3V + i * 6, vt);
    mv_sub<6, 3, S>(Q + 144, in.U + (n - 1 - i) * 8 + fluid::kV, vt);
  }
  if (in.f) {
    for (int i = 0; i < n; ++i) {
      const double* A0inv = fluid_.data() + (base + i) * kF + 256;
      const double* fi = in.f + i * 8;
      S* ut = out.Ut + i * 8;
      for (int j = 0; j < 8; ++j)
        for (int r = 0; r < 8; ++r) ut[r] += A0inv[j * 8 + r] * fi[j];
    }
  }
  if (in.gv) {
    for (int i = 0; i < n; ++i) {
      const double* B0inv = vac_.data() + (base + i) * kVac + 108;
      const double* gi = in.gv + i * 6;
      S* vt = out.Vt + i * 6;
      for (int j = 0; j < 6; ++j)
        for (int r = 0; r < 6; ++r) vt[r] += B0inv[j * 6 + r] * gi[j];
    }
  }

  // Interface closure.
  const Interface& it = iface_[c];
  const S* U0 = in.U;
  const S* VN = in.V + (n - 1) * 6;
  const double e = eps_;
  auto dot3 = [](const S* a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
  S rhs[4];
  rhs[0] = -(it.vr2 * in.d2phi + it.vr3 * in.d3phi) + ring_.d1vN[c] * in.phi + dot3(U0 + fluid::kV, it.N);
  rhs[1] = -dot3(VN + vacuum::kE, it.tau2) + e * it.dtPhiRing * VN[vacuum::kh + 2] - in.dE2;
  rhs[2] = -dot3(VN + vacuum::kE, it.tau3) - e * it.dtPhiRing * VN[vacuum::kh + 1] - in.dE3;
  rhs[3] = -U0[fluid::kQ] + dot3(VN + vacuum::kh, it.hr) - dot3(VN + vacuum::kE, it.Er) -
           ring_.jumpDq[c] * in.phi + sigma_ * in.curv;
  if (in.b) {
    for (int r = 0; r < 4; ++r) rhs[r] += in.b[r];
  }
  S z[4];
  for (int r = 0; r < 4; ++r) {
    z[r] = S(0.0);
    for (int k = 0; k < 4; ++k) z[r] += it.Minv(r, k) * rhs[k];
  }
  double res = 0.0, scale = 1.0;
  for (int r = 0; r < 4; ++r) {
    S m = -rhs[r];
    for (int k = 0; k < 4; ++k) m += it.M(r, k) * z[k];
    res = std::max(res, std::abs(m));
    scale = std::max(scale, std::abs(rhs[r]));
  }
  out.residual = res / scale;

  for (int m = 0; m < 8; ++m) out.Ut[m] += invH0_ * z[0] * it.satQ[m];
  S* vtN = out.Vt + (n - 1) * 6;
  for (int m = 0; m < 6; ++m) vtN[m] -= invH0_ * (z[1] * it.sat1[m] + z[2] * it.sat2[m]);
  out.dtPhi = z[3];

  // Outer characteristic conditions.
  {
    S w[8];
    const S* UN = in.U + (n - 1) * 8;
    for (int m = 0; m < 8; ++m) w[m] = UN[m] - (in.gOutF ? S(in.gOutF[m]) : S(0.0));
    mv_add<8, 8, S>(outF_[c].data(), w, out.Ut + (n - 1) * 8);
    S y[6];
    for (int m = 0; m < 6; ++m) y[m] = in.V[m] - (in.gOutV ? S(in.gOutV[m]) : S(0.0));
    mv_sub<6, 6, S>(outV_[c].data(), y, out.Vt);
  }
}

template void SemiDiscrete::column_rhs<double>(int, const ColumnIn<double>&, ColumnOut<double>&) const;
template void SemiDiscrete::column_rhs<std::complex<double>>(int, const ColumnIn<std::complex<double>>&,
                                                              ColumnOut<std::complex<double>>&) const;

void SemiDiscrete::rhs(const SolverState& s, const Sources& src, SolverState& ds) const {
  const GridSpec& g = ring_.grid;
  const Field8 D2U = dtan<8>(s.U, g, 2), D3U = dtan<8>(s.U, g, 3);
  const Field6 D2V = dtan<6>(s.V, g, 2), D3V = dtan<6>(s.V, g, 3);
  const SurfaceField d2 = dsurf(s.phi, g, 2), d3 = dsurf(s.phi, g, 3);
  const SurfaceField curv = linearized_curvature(s.phi, ring_.curv, g);
  SurfaceField e1phi(g.ncols());
  for (int c = 0; c < g.ncols(); ++c) e1phi[c] = iface_[c].Er[0] * s.phi[c];
  const SurfaceField dE2 = dsurf(e1phi, g, 2), dE3 = dsurf(e1phi, g, 3);

  Field8 f;
  Field6 gv;
  Field4 b;
  Field8 gOutF;
  Field6 gOutV;
  if (src.fluid) {
    f = Field8::Zero(8, g.npts());
    src.fluid(s.t, f);
  }
  if (src.vacuum) {
    gv = Field6::Zero(6, g.npts());
    src.vacuum(s.t, gv);
  }
  if (src.boundary) {
    b = Field4::Zero(4, g.ncols());
    src.boundary(s.t, b);
  }
  if (src.outerFluid) {
    gOutF = Field8::Zero(8, g.ncols());
    src.outerFluid(s.t, gOutF);
  }
  if (src.outerVacuum) {
    gOutV = Field6::Zero(6, g.ncols());
    src.outerVacuum(s.t, gOutV);
  }

  ds.U.resize(8, g.npts());
  ds.V.resize(6, g.npts());
  ds.phi.resize(g.ncols());
  ds.t = s.t;
  const int n = n_;
  for (int c = 0; c < g.ncols(); ++c) {
    const Eigen::Index o8 = static_cast<Eigen::Index>(c) * n * 8;
    const Eigen::Index o6 = static_cast<Eigen::Index>(c) * n * 6;
    ColumnIn<double> in;
    in.U = s.U.data() + o8;
    in.D2U = D2U.data() + o8;
    in.D3U = D3U.data() + o8;
    in.V = s.V.data() + o6;
    in.D2V = D2V.data() + o6;
    in.D3V = D3V.data() + o6;
    in.phi = s.phi[c];
    in.d2phi = d2[c];
    in.d3phi = d3[c];
    in.curv = curv[c];
    in.dE2 = dE2[c];
    in.dE3 = dE3[c];
    if (src.fluid) in.f = f.data() + o8;
    if (src.vacuum) in.gv = gv.data() + o6;
    if (src.boundary) in.b = b.data() + 4 * c;
    if (src.outerFluid) in.gOutF = gOutF.data() + 8 * c;
    if (src.outerVacuum) in.gOutV = gOutV.data() + 6 * c;
    ColumnOut<double> out;
    out.Ut = ds.U.data() + o8;
    out.Vt = ds.V.data() + o6;
    column_rhs<double>(c, in, out);
    if (!(out.residual <= 1e-9)) {
      std::ostringstream os;
      os << "interface solve residual " << out.residual << " exceeds 1e-9 at column " << c << " (t = " << s.t
         << ")";
      throw NumericalError(os.str());
    }
    ds.phi[c] = out.dtPhi;
  }
}

double SemiDiscrete::stable_dt(double cfl) const { return cfl / spectralSum_; }

SolverState advance(const SolverState& s, const SemiDiscrete& op, const Sources& src, double dt) {
  SolverState k, s1, s2, out;
  op.rhs(s, src, k);
  s1.U = s.U + dt * k.U;
  s1.V = s.V + dt * k.V;
  s1.phi = s.phi + dt * k.phi;
  s1.t = s.t + dt;
  op.rhs(s1, src, k);
  s2.U = 0.75 * s.U + 0.25 * (s1.U + dt * k.U);
  s2.V = 0.75 * s.V + 0.25 * (s1.V + dt * k.V);
  s2.phi = 0.75 * s.phi + 0.25 * (s1.phi + dt * k.phi);
  s2.t = s.t + 0.5 * dt;
  op.rhs(s2, src, k);
  out.U = (s.U + 2.0 * (s2.U + dt * k.U)) / 3.0;
  out.V = (s.V + 2.0 * (s2.V + dt * k.V)) / 3.0;
  out.phi = (s.phi + 2.0 * (s2.phi + dt * k.phi)) / 3.0;
  out.t = s.t + dt;
  return out;
}

LinearPerturbation to_perturbation(const SolverState& s, const SolverState& ds, const GridSpec& g) {
  LinearPerturbation p;
  p.U = s.U;
  p.dtU = ds.U;
  p.V = s.V;
  p.dtV = ds.V;
  p.phi = InterfaceField::from_phi(s.phi, ds.phi, g);
  p.f = Field8::Zero(8, g.npts());
  return p;
}

void EstimateAccumulator::add(double t, double fluid, double vacuum, double front, double source) {
  if (started) {
    const double w = 0.5 * (t - lastT);
    fluidSq += w * (fluid + lastFluid);
    vacuumSq += w * (vacuum + lastVacuum);
    frontSq += w * (front + lastFront);
    sourceSq += w * (source + lastSource);
  }
  started = true;
  lastT = t;
  lastFluid = fluid;
  lastVacuum = vacuum;
  lastFront = front;
  lastSource = source;
}

double EstimateAccumulator::lhs() const { return std::sqrt(fluidSq) + std::sqrt(vacuumSq) + std::sqrt(frontSq); }
double EstimateAccumulator::rhs() const { return std::sqrt(sourceSq); }

std::string RunArtifact::series_csv() const {
  std::ostringstream os;
  os << "t,I,Itan1,Ivac,surfTerm,ratio54,divFluidMax,divVacMax,traceHNMax\n";
  os << std::setprecision(17);
  for (const SnapshotRow& r : series) {
    os << r.t << ',' << r.I << ',' << r.Itan1 << ',' << r.Ivac << ',' << r.surfTerm << ',' << r.ratio54 << ','
       << r.divFluidMax << ',' << r.divVacMax << ',' << r.traceHNMax << '\n';
  }
  return os.str();
}

namespace {

Field8 source_at(const Sources& src, double t, const GridSpec& g) {
  Field8 f = Field8::Zero(8, g.npts());
  if (src.fluid) src.fluid(t, f);
  return f;
}

SnapshotRow snapshot(const SolverState& s, const SemiDiscrete& op, const Sources& src, RunArtifact& art) {
  const BasicState& ring = op.ring();
  const GridSpec& g = ring.grid;
  SolverState ds;
  op.rhs(s, src, ds);
  LinearPerturbation pert = to_perturbation(s, ds, g);
  const EnergyReport er = energy_report(pert, ring);
  const ConstraintReport cr = constraints(pert, ring);

  const Field8 f = source_at(src, s.t, g);
  Field8 dtf = Field8::Zero(8, g.npts());
  if (src.fluid) {
    const double d = 1e-4;
    dtf = (source_at(src, s.t + d, g) - source_at(src, std::max(0.0, s.t - d), g)) / (s.t + d - std::max(0.0, s.t - d));
  }
  art.estimate.add(s.t, h1tan_density<8>(pert.U, pert.dtU, g), h1_density_vacuum(pert.V, pert.dtV, g),
                   front_density(pert.phi, g), h1tan_density<8>(f, dtf, g));

  SnapshotRow row;
  row.t = s.t;
  row.I = er.I;
  row.Itan1 = er.Iell[0] + er.Iell[1] + er.Iell[2];
  row.Ivac = er.Ivac;
  row.surfTerm = er.surfTerm;
  row.ratio54 = art.estimate.rhs() > 0.0 ? art.estimate.lhs() / art.estimate.rhs() : 0.0;
  row.divFluidMax = cr.maxDivFluid;
  row.divVacMax = std::max(cr.maxDivVacH, cr.maxDivVacE);
  row.traceHNMax = std::max(cr.maxTraceHN, cr.maxTracehN);
  art.maxConstraint = std::max({art.maxConstraint, row.divFluidMax, row.divVacMax, row.traceHNMax});
  return row;
}

double state_norm(const SolverState& s) {
  return std::sqrt(s.U.squaredNorm() + s.V.squaredNorm() + s.phi.squaredNorm());
}

}  // namespace

RunArtifact run_simulation(const SolverConfig& cfg, const BasicState& ring, const Sources& src,
                           const SolverState* initial) {
  cfg.validate();
  const GridSpec& g = ring.grid;
  if (g.nx1 != cfg.grid.nx1 || g.nx2 != cfg.grid.nx2 || g.nx3 != cfg.grid.nx3) {
    throw UsageError("solver grid does not match the basic-state grid");
  }
  const SemiDiscrete op(ring);
  const bool exactOuter = src.outerFluid && src.outerVacuum;
  if (!cfg.allowLongRun && !exactOuter && cfg.tEnd >= g.L1 / op.max_speed()) {
    std::ostringstream os;
    os << "tEnd_time " << cfg.tEnd << " exceeds the run-length guard L1/maxSpeed = " << g.L1 / op.max_speed();
    throw UsageError(os.str());
  }
  RunArtifact art;
  art.cfg = cfg;
  double dt = g.dt > 0.0 ? g.dt : op.stable_dt(cfg.cfl);
  if (g.dt > 0.0 && g.dt > op.stable_dt(kCflMax)) throw UsageError("grid.dt exceeds the stability bound");
  const int nSteps = static_cast<int>(std::ceil(cfg.tEnd / dt - 1e-12));
  dt = cfg.tEnd / nSteps;
  art.dt = dt;

  SolverState s = initial ? *initial : SolverState::zero(g);
  s.t = 0.0;
  const double ref = std::max(state_norm(s), 1.0);
  art.series.push_back(snapshot(s, op, src, art));
  for (int step = 1; step <= nSteps; ++step) {
    s = advance(s, op, src, dt);
    const double nrm = state_norm(s);
    if (!std::isfinite(nrm) || nrm > cfg.blowupFactor * ref) {
      std::ostringstream os;
      os << "instability detected at step " << step << " (t = " << s.t << ", norm = " << nrm << ")";
      throw NumericalError(os.str());
    }
    if (step % cfg.snapshotEvery == 0 || step == nSteps) art.series.push_back(snapshot(s, op, src, art));
  }
  art.steps = nSteps;
  art.final = s;
  return art;
}

}  // namespace mhdvac
