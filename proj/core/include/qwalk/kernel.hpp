#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qwalk/roots.hpp"
#include "qwalk/step_set.hpp"

namespace qwalk {

/// c0 + c1 t + c2 t^2 with 0/1 coefficients.
struct QuadPoly {
  std::array<int, 3> c{};

  template <class T>
  T operator()(T t) const {
    return T(c[0]) + t * (T(c[1]) + t * T(c[2]));
  }
  template <class T>
  T derivative(T t) const {
    return T(c[1]) + T(2 * c[2]) * t;
  }
  bool is_zero() const noexcept { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
  int at_one() const noexcept { return c[0] + c[1] + c[2]; }
};

/// a(x) = sum_i d_{i,1} x^{i+1}, b(x) = sum_i d_{i,0} x^{i+1}, c(x) = sum_i d_{i,-1} x^{i+1};
/// the tilde versions swap the roles of i and j.
struct KernelPolys {
  QuadPoly a, b, c;
  QuadPoly a_t, b_t, c_t;
};

KernelPolys kernel_polys(const StepSet& s);

/// K(x, y, z) = x y [sum d_{i,j} x^i y^j - 1/z]. Throws OutOfRange for z = 0.
cdouble kernel_eval(const StepSet& s, cdouble x, cdouble y, double z);
/// The same kernel written as a-tilde(y) x^2 + [b-tilde(y) - y/z] x + c-tilde(y).
cdouble kernel_quadratic_in_x(const StepSet& s, cdouble x, cdouble y, double z);
/// The same kernel written as a(x) y^2 + [b(x) - x/z] y + c(x).
cdouble kernel_quadratic_in_y(const StepSet& s, cdouble x, cdouble y, double z);

/// Ascending coefficients of d(x, z) = [b(x) - x/z]^2 - 4 a(x) c(x).
std::array<double, 5> discriminant_x(const StepSet& s, double z);
/// Ascending coefficients of d-tilde(y, z) = [b-tilde(y) - y/z]^2 - 4 a-tilde(y) c-tilde(y).
std::array<double, 5> discriminant_y(const StepSet& s, double z);

/// A root of a discriminant; `infinite` marks a root lost to a degree drop.
struct BranchPoint {
  cdouble value{};
  bool infinite = false;

  double modulus() const;
};

struct BranchPoints {
  double z = 0.0;
  std::array<BranchPoint, 4> x{};
  std::array<BranchPoint, 4> y{};
  /// True when 0 < z < 1/|S|, the range where the ordering below is guaranteed.
  bool ordering_asserted = false;
  /// |r1| < r2 < 1 < r3 < |r4| with r2, r3 real positive, checked on the result.
  bool x_ordered = false;
  bool y_ordered = false;
  /// r2 and r3 coincide within the clustering tolerance (genus transition).
  bool x_collided = false;
  bool y_collided = false;
};

inline constexpr double kClusterTolerance = 1e-9;

/// Roots of both discriminants sorted by modulus, infinite roots last.
/// Throws OutOfRange for z <= 0, RootFindingFailure from the solver.
BranchPoints branch_points(const StepSet& s, double z);

/// Checks the four-root ordering pattern on one plane.
bool branch_ordering_holds(const std::array<BranchPoint, 4>& roots);

/// Two roots of a kernel quadratic, |first| <= |second|; second may be at infinity.
struct BranchPair {
  cdouble first{};
  cdouble second{};
  bool second_infinite = false;
};

/// Y0(x, z), Y1(x, z). On the cuts where |Y0| = |Y1| the upper-side limit is used.
/// Throws DegenerateQuadratic when a(x) = 0 and b(x) - x/z = 0.
BranchPair y_branches(const StepSet& s, cdouble x, double z);
/// X0(y, z), X1(y, z); mirror of y_branches.
BranchPair x_branches(const StepSet& s, cdouble y, double z);

/// Polyline approximating M_z = X0 over the slit [y1, y2], traversed along the
/// upper edge and back along the lower edge, oriented positively around x1(z).
struct CurveTrace {
  double z = 0.0;
  double y1 = 0.0, y2 = 0.0;
  /// Curve points x(phi_k), phi_k = 2 pi (k + 1/2) / m.
  std::vector<cdouble> points;
  /// dx/dphi at each node.
  std::vector<cdouble> tangents;
  /// Slit parameter at each node; equals Y0 at the curve point.
  std::vector<double> y_values;
  /// Gap between the two edges at the slit ends.
  double closure_defect = 0.0;
  /// max |x(phi) - conj x(2 pi - phi)|.
  double conjugation_defect = 0.0;
  int winding_x1 = 0;
  int winding_x3 = 0;
  /// Sampled points of [x3, x4] all have winding number zero.
  bool segment_x3_x4_outside = false;
};

/// Traces M_z with m >= 16 nodes. Throws GenusZeroRegime when y2 and y3 have
/// merged or left the real axis, SlitDegenerate when the slit collapses or the
/// curve passes through infinity.
CurveTrace trace_curve_M(const StepSet& s, double z, int m);

/// Same construction in the y-plane: L_z = Y0 over [x1, x2].
CurveTrace trace_curve_L(const StepSet& s, double z, int m);

/// Winding number of a closed polyline around a point.
int winding_number(const std::vector<cdouble>& polyline, cdouble point);

/// Distance from a point to a closed polyline.
double distance_to_polyline(const std::vector<cdouble>& polyline, cdouble point);

enum class DomainPosition { Inside, Outside, OnBoundary };

/// Position of x relative to G(M_z), the domain bounded by M_z containing x1(z).
/// Points within 1e-7 of the curve are OnBoundary.
DomainPosition point_in_G_M(const StepSet& s, cdouble x, double z);

/// Same, given a precomputed trace.
DomainPosition point_in_G_M(const StepSet& s, cdouble x, const CurveTrace& trace);

const char* to_string(DomainPosition p) noexcept;

}  // namespace qwalk
