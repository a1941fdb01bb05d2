#pragma once

#include <span>
#include <vector>

#include <gmpxx.h>

namespace qwalk {

/// Fit c_k ~ const * rho^k * k^alpha on the subsequence c_{offset + k * stride}.
struct SeriesAnalysis {
  double rho = 0.0;
  double alpha = 0.0;
  double const_estimate = 0.0;
  double rho_uncertainty = 0.0;
  double alpha_uncertainty = 0.0;
  double const_uncertainty = 0.0;
  int stride = 1;
  int offset = 0;
  /// Lag p of the ratios c_k / c_{k-p}; a multiple of every oscillation period
  /// left on the subsequence by dominant singularities at rho^-1 times roots of unity.
  int ratio_period = 2;
  /// Subsequence indices used by the final extrapolation.
  int k_first = 0;
  int k_last = 0;
  /// |level p - level p-1| of the rho extrapolation, p = 1..depth.
  std::vector<double> diagnostics;
  bool converged = false;
};

inline constexpr int kRichardsonDepth = 4;

/// stride = 0 detects the period from the positions of the nonzero terms.
/// Throws ZeroSequence, InsufficientData (fewer than 32 nonzero terms).
SeriesAnalysis growth_estimate(std::span<const mpz_class> coeffs, int stride = 0);

struct PredictionTolerances {
  double rho_rel = 1e-6;
  double alpha_abs = 1e-2;
  double const_rel = 1e-2;
};

struct PredictionReport {
  SeriesAnalysis analysis;
  double rho_deviation = 0.0;    ///< relative
  double alpha_deviation = 0.0;  ///< absolute
  double const_deviation = 0.0;  ///< relative
  bool rho_ok = false;
  bool alpha_ok = false;
  /// The deviation is within tolerance and the fit's own uncertainty is too.
  bool const_ok = false;
  bool passed() const noexcept { return rho_ok && alpha_ok && const_ok; }
};

PredictionReport verify_prediction(std::span<const mpz_class> coeffs, double rho0, double alpha0,
                                   double const0, const PredictionTolerances& tol = {},
                                   int stride = 0);

}  // namespace qwalk
