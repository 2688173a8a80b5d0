#include <cmath>

#include "doctest.h"
#include "mhdvac/frozen_mode.hpp"
#include "mhdvac/scenario.hpp"

using namespace mhdvac;

namespace {

ModeSpec mode(const std::string& preset, double k, double s, double eps = 0.25) {
  ModeSpec m;
  m.k2 = k;
  m.ring = preset_recipe(preset);
  m.sTension = s;
  m.epsilon = eps;
  return m;
}

FrozenModeOptions coarse() {
  FrozenModeOptions o;
  o.n1 = 24;
  o.nWaves = 1.0;
  return o;
}

}  // namespace

TEST_CASE("trivial ring is neutral") {
  for (double s : {0.0, 0.1})
    for (double k : {1.0, 4.0, 16.0}) {
      const FrozenModeResult r = frozen_mode_growth(mode("trivial", k, s), coarse());
      CHECK(r.growthRate <= 1e-6);
      CHECK(r.L1 == doctest::Approx(2.0 * 3.141592653589793 / k).epsilon(1e-12));
    }
}

TEST_CASE("spectrum slice is ordered by real part") {
  const FrozenModeResult r = frozen_mode_growth(mode("bigE", 3.0, 0.0, 0.1), coarse());
  REQUIRE(r.spectrumSlice.size() >= 2);
  for (size_t i = 1; i < r.spectrumSlice.size(); ++i)
    CHECK(r.spectrumSlice[i - 1].real() >= r.spectrumSlice[i].real());
  CHECK(r.growthRate == doctest::Approx(r.spectrumSlice.front().real()));
}

TEST_CASE("generator size follows the grid") {
  const FrozenModeOptions o = coarse();
  double L1 = 0.0;
  const Eigen::MatrixXcd A = frozen_mode_generator(mode("trivial", 2.0, 0.1), o, &L1);
  CHECK(A.rows() == A.cols());
  CHECK(A.rows() == 14 * (o.n1 + 1) + 1);
  CHECK(L1 > 0.0);
}

TEST_CASE("mode direction does not matter for an isotropic ring") {
  ModeSpec a = mode("trivial", 3.0, 0.1), b = a;
  b.k2 = 0.0;
  b.k3 = 3.0;
  CHECK(frozen_mode_growth(a, coarse()).growthRate ==
        doctest::Approx(frozen_mode_growth(b, coarse()).growthRate).epsilon(1e-8));
}

TEST_CASE("large vacuum field without tension grows with the wavenumber") {
  const std::vector<GrowthPoint> c = growth_curve(mode("bigE", 1.0, 0.0, 0.1), 2.0, 32.0, 5, 0.0, coarse());
  REQUIRE(c.size() == 5);
  CHECK(c.front().growthRate > 1e-3);
  CHECK(increasing_from(c, 2.0));
  // Ill-posed: growth proportional to |k|.
  CHECK(c.back().growthRate / c.front().growthRate == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("monotonicity helpers") {
  const std::vector<GrowthPoint> c{{1.0, 0.5}, {2.0, 0.2}, {4.0, 1e-7}, {8.0, 2e-7}};
  CHECK(nonincreasing_from(c, 1.0, 1e-6));
  CHECK_FALSE(nonincreasing_from(c, 1.0));
  CHECK_FALSE(increasing_from(c, 1.0));
  CHECK(increasing_from(c, 4.0));
}

TEST_CASE("mode validation") {
  FrozenModeOptions o = coarse();
  CHECK_THROWS_AS(frozen_mode_growth(mode("trivial", 0.0, 0.1), o), UsageError);
  CHECK_THROWS_AS(frozen_mode_growth(mode("trivial", 1.0, 0.1, 0.0), o), UsageError);
  o.n1 = 2;
  CHECK_THROWS_AS(frozen_mode_growth(mode("trivial", 1.0, 0.1), o), UsageError);
}
