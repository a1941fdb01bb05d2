#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qwalk/step_set.hpp"

namespace qwalk {

/// Minimiser (alpha, beta) of P(a, b) = sum d_{i,j} a^i b^j on (0, inf)^2, z_g = 1 / P(alpha, beta).
struct CriticalPoint {
  double alpha = 1.0;
  double beta = 1.0;
  double z_g = 0.0;
  int iterations = 0;
  bool used_bisection = false;
  /// max |sum i d a^i b^j|, |sum j d a^i b^j| at the returned point, relative to P.
  double residual = 0.0;
};

/// Damped Newton in log coordinates, nested bisection as fallback.
/// Throws SingularWalk for singular step sets and NoPositiveSolution when the
/// origin is not interior to the convex hull of the steps.
CriticalPoint critical_point(const StepSet& s);

/// Smallest positive z at which x2(z) and x3(z) collide, found among the real
/// roots of the resultant of d(x, z) and its x-derivative. Throws SingularWalk,
/// or ValidationMismatch when no candidate root is a genuine collision.
double z_g_via_resultant(const StepSet& s);

/// z_Y = 1 / (b(1) + 2 sqrt(a(1) c(1))). Throws DivisionByZero when the denominator vanishes.
double z_Y(const StepSet& s);
/// z_X = 1 / (b~(1) + 2 sqrt(a~(1) c~(1))).
double z_X(const StepSet& s);

enum class Sign { Negative, Zero, Positive };
char sign_char(Sign s) noexcept;

enum class Candidate { ZG, ZX, ZY, InvS };
std::string_view to_string(Candidate c) noexcept;

/// First positive singularity of one series. When the covariance is zero in a
/// split row both designated candidates are listed and `tie` is set.
struct FirstSingularity {
  Candidate label = Candidate::InvS;
  double value = 0.0;
  bool tie = false;
  std::optional<Candidate> tie_with;
};

struct SingularityReport {
  double z_g = 0.0;
  double z_X = 0.0;
  double z_Y = 0.0;
  double inv_S = 0.0;
  Sign drift_x = Sign::Zero;
  Sign drift_y = Sign::Zero;
  Sign cov = Sign::Zero;
  int mx = 0, my = 0, covariance = 0;
  FirstSingularity fs_Q10, fs_Q01, fs_Q11;
  CriticalPoint critical;
  std::optional<double> z_g_resultant;
  /// |z_g_resultant - z_g| when both routes ran.
  std::optional<double> method_gap;
};

double candidate_value(const SingularityReport& r, Candidate c);

/// Fills the report from the drift and covariance signs. Throws SingularWalk.
SingularityReport classify_first_singularities(const StepSet& s);

}  // namespace qwalk
