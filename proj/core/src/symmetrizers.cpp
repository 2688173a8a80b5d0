#include "mhdvac/symmetrizers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mhdvac/errors.hpp"

namespace mhdvac {

namespace {

void require_hyperbolic(const FluidState& U, const EosModel& eos) {
  if (!check_hyperbolicity(U, eos)) {
    std::ostringstream os;
    os << "non-hyperbolic fluid state: p = " << U.pressure();
    throw DomainError(os.str());
  }
}

void require_lift(const LiftAt& lift) {
  if (!(lift.d1 > 0.0)) {
    std::ostringstream os;
    os << "degenerate lift: d1Phi = " << lift.d1;
    throw DomainError(os.str());
  }
}

void require_axis(int i, int lo) {
  if (i < lo || i > 3) {
    std::ostringstream os;
    os << "axis " << i << " outside " << lo << "..3";
    throw UsageError(os.str());
  }
}

std::array<Dual, 8> seed(const Vec8& u, const Vec8& du) {
  std::array<Dual, 8> r;
  for (int k = 0; k < 8; ++k) r[k] = Dual(u[k], du[k]);
  return r;
}

}  // namespace

Mat8 build_A0(const FluidState& U, const EosModel& eos) {
  require_hyperbolic(U, eos);
  return to_eigen(a0_t(as_array(U.vector()), eos));
}

Mat8 build_Ai(const FluidState& U, const EosModel& eos, int i) {
  require_axis(i, 1);
  require_hyperbolic(U, eos);
  return to_eigen(ai_t(as_array(U.vector()), eos, i));
}

Mat8 build_boundary_fluid(const FluidState& U, const EosModel& eos, const LiftAt& lift) {
  require_lift(lift);
  require_hyperbolic(U, eos);
  return to_eigen(a1_lifted_t(as_array(U.vector()), eos, lift));
}

Mat6 build_Bj(int j) {
  require_axis(j, 1);
  return to_eigen(secondary_t<double>({0.0, 0.0, 0.0}, j));
}

MaxwellBoundary build_boundary_maxwell(const FrontPoint& phi, double eps) {
  LiftAt lift{phi.dtPhi, 1.0, phi.d2Phi, phi.d3Phi};
  MaxwellBoundary r;
  r.B = to_eigen(secondary_lifted_t<double>({0.0, 0.0, 0.0}, lift, eps));
  const double s = std::sqrt(1.0 + phi.d2Phi * phi.d2Phi + phi.d3Phi * phi.d3Phi);
  const double c = -eps * phi.dtPhi;
  r.eigs = {c - s, c - s, c, c, c + s, c + s};
  return r;
}

Mat6 build_secondary_symmetrizer(const Vec3& nu, int j) {
  require_axis(j, 0);
  return to_eigen(secondary_t<double>({nu[0], nu[1], nu[2]}, j));
}

Mat6 build_secondary_boundary(const Vec3& vMinus, const LiftAt& lift, double eps) {
  require_lift(lift);
  const Vec3 nu = eps * vMinus;
  return to_eigen(secondary_lifted_t<double>({nu[0], nu[1], nu[2]}, lift, eps));
}

Mat8 dA0(const FluidState& U, const Vec8& dU, const EosModel& eos) {
  require_hyperbolic(U, eos);
  return dual_part(a0_t(seed(U.vector(), dU), eos));
}

Mat8 dAi(const FluidState& U, const Vec8& dU, const EosModel& eos, int i) {
  require_axis(i, 1);
  require_hyperbolic(U, eos);
  return dual_part(ai_t(seed(U.vector(), dU), eos, i));
}

Mat8 dA1_lifted(const FluidState& U, const Vec8& dU, const EosModel& eos, const LiftAt& lift) {
  require_lift(lift);
  require_hyperbolic(U, eos);
  return dual_part(a1_lifted_t(seed(U.vector(), dU), eos, lift));
}

bool is_exactly_symmetric(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) return false;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = i + 1; j < M.cols(); ++j)
      if (M(i, j) != M(j, i)) return false;
  return true;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

Inertia inertia(const Eigen::MatrixXd& M, double zeroTol) {
  if (M.rows() != M.cols()) throw UsageError("inertia: matrix is not square");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw UsageError("inertia: matrix is not symmetric");
  }
  const Eigen::VectorXd ev = symmetric_eigenvalues(M);
  Inertia r;
  const double radius = ev.size() ? std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1])) : 0.0;
  r.zeroTol = zeroTol >= 0.0 ? zeroTol : 1e-8 * radius;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev[k] < -r.zeroTol) ++r.nNeg;
    else if (ev[k] > r.zeroTol) ++r.nPos;
    else ++r.nZero;
  }
  return r;
}

std::string matrix_csv(const Eigen::MatrixXd& M) {
  std::string out;
  char buf[40];
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", M(i, j));
      if (j) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace mhdvac
