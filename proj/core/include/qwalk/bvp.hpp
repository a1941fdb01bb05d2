#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qwalk/kernel.hpp"
#include "qwalk/step_set.hpp"

namespace qwalk {

/// Conformal gluing function for a domain bounded by a traced curve. The pole is
/// at t = 0 with the given residue.
struct CGF {
  std::string name;
  std::function<cdouble(cdouble t, double z)> w;
  std::function<cdouble(cdouble t, double z)> dw;
  double residue = 1.0;
};

/// w(t) = t + 1/t, the gluing function of the unit disc.
CGF circle_cgf();

/// max |w(t) - w(conj t)| over the nodes of a trace.
double gluing_defect(const CGF& w, const CurveTrace& trace);

enum class GFMethod { CircleClosedForm, CgfIntegral, Relation };
const char* to_string(GFMethod m) noexcept;

struct GFValue {
  double value = 0.0;
  double z = 0.0;
  GFMethod method = GFMethod::CircleClosedForm;
  double error_estimate = 0.0;
  /// Notes such as "on-boundary" or "composite-point".
  std::vector<std::string> flags;
};

/// Excursion series of the simple walk by its closed-form integral. Throws OutOfRange outside (0, 1/4).
GFValue q00_simple(double z);
/// The same integral for z in (-1/4, 1/4); at z = 0 it returns 1.
GFValue q00_simple_continued(double z);
/// Walks ending on the horizontal axis for the simple walk. Throws OutOfRange outside (0, 1/4).
GFValue q10_simple(double z);

/// Solves (|S| - 1/z) Q(1,1) = c(1) Q(1,0) + c~(1) Q(0,1) - d_{-1,-1} Q(0,0) - 1/z.
/// Throws RemovableSingularity at z = 1/|S|.
GFValue q11_from_relation(const StepSet& s, double z, double q10, double q01, double q00);

struct ContourValue {
  cdouble value{};
  double error_estimate = 0.0;
  int nodes = 0;
  bool principal_value = false;
};

/// c(x) Q(x,0,z) - c(0) Q(0,0,z) as the contour integral over M_z with gluing
/// function w. Throws PointOutsideDomain, CGFUnavailable, trace errors.
ContourValue qx0_integral(const StepSet& s, cdouble x, double z, const CGF& w);

enum class Q00Case { A, B, C };
const char* to_string(Q00Case c) noexcept;

struct Q00Dispatch {
  Q00Case which = Q00Case::A;
  /// Roots of c for case (b).
  std::vector<cdouble> roots;
};

/// Case split on c(0) and the degree of c.
Q00Dispatch q00_case(const StepSet& s);

/// Q(0,0,z) through the contour integral. Case (c) needs a gluing function for
/// G(L_z) as well; pass it as `w_L`. Throws RootOutsideDomain, CGFUnavailable.
GFValue q00_general(const StepSet& s, double z, const CGF& w, const CGF* w_L = nullptr);

/// Q(1,0,z) through the contour integral, with the composite-point relation
/// when 1 lies outside G(M_z). Throws CGFUnavailable, CaseUndetermined.
GFValue q10_general(const StepSet& s, double z, const CGF& w);

/// Q(0,1,z): q10_general on the mirrored step set.
GFValue q01_general(const StepSet& s, double z, const CGF& w);

/// Solves the functional equation at a kernel root (x, y) for Q(0,0,z) given
/// Q(x,0,z) and Q(0,y,z). Throws DivisionByZero when d_{-1,-1} = 0.
cdouble q00_at_kernel_root(const StepSet& s, cdouble x, cdouble y, double z, cdouble qx0,
                           cdouble q0y);

}  // namespace qwalk
