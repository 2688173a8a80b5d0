#include "mhdvac/state_model.hpp"

#include <sstream>

namespace mhdvac {

Vec8 FluidState::vector() const {
  Vec8 u;
  u << q, v[0], v[1], v[2], H[0], H[1], H[2], S;
  return u;
}

FluidState FluidState::from_vector(const Vec8& u) {
  FluidState s;
  s.q = u[0];
  s.v = u.segment<3>(1);
  s.H = u.segment<3>(4);
  s.S = u[7];
  return s;
}

Vec6 VacuumState::vector() const {
  Vec6 u;
  u << h[0], h[1], h[2], E[0], E[1], E[2];
  return u;
}

VacuumState VacuumState::from_vector(const Vec6& u) {
  return {u.head<3>(), u.tail<3>()};
}

void PhysicsParams::validate() const {
  if (!(epsilon > 0.0)) throw UsageError("epsilon must be positive");
  if (epsilon > 0.5) throw UsageError("epsilon must not exceed 0.5");
  if (!(sigmaTension >= 0.0)) throw UsageError("sigmaTension must be nonnegative");
}

void GridSpec::validate() const {
  if (nx1 < 8) throw UsageError("grid.nx1 must be at least 8 (normal difference closure)");
  if (nx2 < 4 || nx3 < 4) throw UsageError("grid.nx2 and grid.nx3 must be at least 4");
  if (!(L1 > 0.0) || !(L2 > 0.0) || !(L3 > 0.0)) throw UsageError("grid lengths must be positive");
  if (dt < 0.0) throw UsageError("grid.dt must be nonnegative");
}

EosValue eos_eval(double p, double S, const EosModel& eos) {
  if (!(p > 0.0)) {
    std::ostringstream os;
    os << "pressure must be positive, got " << p;
    throw DomainError(os.str());
  }
  double rho = 0.0;
  double a2 = 0.0;
  eos_eval_t(p, S, eos, rho, a2);
  return {rho, std::sqrt(a2)};
}

bool check_hyperbolicity(const FluidState& U, const EosModel& eos) {
  const double p = U.pressure();
  if (!(p > 0.0) || !std::isfinite(p)) return false;
  const EosValue e = eos_eval(p, U.S, eos);
  return e.rho > 0.0 && e.a > 0.0 && std::isfinite(e.rho) && std::isfinite(e.a);
}

}  // namespace mhdvac
