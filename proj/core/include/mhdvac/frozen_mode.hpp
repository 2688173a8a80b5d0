#pragma once

#include <complex>
#include <vector>

#include "mhdvac/basic_state.hpp"

namespace mhdvac {

// One tangential Fourier mode exp(i (k2 x2 + k3 x3)) around an x'-independent basic state.
struct ModeSpec {
  double k2 = 1.0;
  double k3 = 0.0;
  RingRecipe ring;
  double sTension = 0.0;
  double epsilon = 0.25;
  EosModel eos;
};

struct FrozenModeOptions {
  int n1 = 32;
  // Normal truncation L1 = nWaves * 2 pi / |k|.
  double nWaves = 2.0;
  int sliceSize = 6;
};

struct FrozenModeResult {
  double growthRate = 0.0;
  double L1 = 0.0;
  int order = 0;
  std::vector<std::complex<double>> spectrumSlice;  // largest real parts first
};

// Generator of the semi-discrete system for one mode (dense, complex).
Eigen::MatrixXcd frozen_mode_generator(const ModeSpec& mode, const FrozenModeOptions& opt, double* L1 = nullptr);

FrozenModeResult frozen_mode_growth(const ModeSpec& mode, const FrozenModeOptions& opt = {});

struct GrowthPoint {
  double k = 0.0;
  double growthRate = 0.0;
};

// Growth rate along the direction (cos a, sin a) at log-spaced |k| in [kMin, kMax].
std::vector<GrowthPoint> growth_curve(const ModeSpec& base, double kMin, double kMax, int count, double angle,
                                      const FrozenModeOptions& opt = {});

}  // namespace mhdvac
