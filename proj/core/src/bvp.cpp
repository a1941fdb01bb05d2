#include "qwalk/bvp.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr int kFirstNodes = 64;
constexpr int kMaxNodes = 1 << 14;
constexpr double kContourTolerance = 1e-9;
constexpr double kGluingTolerance = 1e-9;
constexpr int kMembershipNodes = 2048;

void require_simple_range(double z) {
  if (!(z > 0.0 && z < 0.25)) throw Error(ErrorKind::OutOfRange, "z must lie in (0, 1/4)");
}

// 1 - 2uz - sqrt((1 - 2uz)^2 - 4z^2), divided by z^2, without cancellation.
double circle_kernel(double u, double z) {
  const double a = 1.0 - 2.0 * u * z;
  return 4.0 / (a + std::sqrt(std::max(a * a - 4.0 * z * z, 0.0)));
}

GFValue closed_form(double value, double z, double err) {
  GFValue v;
  v.value = value;
  v.z = z;
  v.method = GFMethod::CircleClosedForm;
  v.error_estimate = err;
  return v;
}

double q00_integral(double z) {
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0;
  const double v = ts.integrate(
      [z](double u) { return circle_kernel(u, z) * std::sqrt(std::max(1.0 - u * u, 0.0)); }, -1.0,
      1.0, 1e-14, &err);
  return v / std::numbers::pi;
}

// Sum over the trace nodes of g(t, Y0(t), dt/dphi), times 2pi/m, for a given node count.
template <class G>
cdouble contour_sum(const CurveTrace& tr, G g) {
  cdouble acc = 0.0;
  const std::size_t m = tr.points.size();
  for (std::size_t k = 0; k < m; ++k) acc += g(tr.points[k], tr.y_values[k]) * tr.tangents[k];
  return acc * (2.0 * std::numbers::pi / static_cast<double>(m));
}

// (1 / 2 pi i z) times the contour integral of g, doubling nodes until two
// successive values agree.
template <class G>
ContourValue refined_integral(const StepSet& s, double z, const CGF& w, G g) {
  const cdouble scale = 1.0 / (2.0 * std::numbers::pi * cdouble(0.0, 1.0) * z);
  ContourValue out;
  cdouble prev = 0.0;
  bool have_prev = false;
  for (int m = kFirstNodes; m <= kMaxNodes; m *= 2) {
    const CurveTrace tr = trace_curve_M(s, z, m);
    if (!have_prev && gluing_defect(w, tr) > kGluingTolerance) {
      throw Error(ErrorKind::CGFUnavailable, w.name + " does not glue the boundary of G(M_z)");
    }
    const cdouble v = scale * contour_sum(tr, [&](cdouble t, double y) { return g(t, y); });
    out.value = v;
    out.nodes = m;
    if (have_prev) {
      out.error_estimate = std::abs(v - prev);
      if (out.error_estimate < kContourTolerance * std::max(1.0, std::abs(v))) return out;
    }
    prev = v;
    have_prev = true;
  }
  return out;
}

ContourValue cauchy_integral(const StepSet& s, cdouble x, double z, const CGF& w) {
  const cdouble wx = w.w(x, z);
  return refined_integral(s, z, w, [&](cdouble t, double y) {
    return t * y * w.dw(t, z) / (w.w(t, z) - wx);
  });
}

void require_glues(const CGF& w, const CurveTrace& tr) {
  if (gluing_defect(w, tr) > kGluingTolerance) {
    throw Error(ErrorKind::CGFUnavailable, w.name + " does not glue the boundary of G(M_z)");
  }
}

GFValue integral_value(double value, double z, double err) {
  GFValue v;
  v.value = value;
  v.z = z;
  v.method = GFMethod::CgfIntegral;
  v.error_estimate = err;
  return v;
}

}  // namespace

CGF circle_cgf() {
  CGF c;
  c.name = "builtin-circle";
  c.w = [](cdouble t, double) { return t + 1.0 / t; };
  c.dw = [](cdouble t, double) { return 1.0 - 1.0 / (t * t); };
  c.residue = 1.0;
  return c;
}

double gluing_defect(const CGF& w, const CurveTrace& trace) {
  double worst = 0.0;
  for (cdouble t : trace.points) {
    worst = std::max(worst, std::abs(w.w(t, trace.z) - w.w(std::conj(t), trace.z)));
  }
  return worst;
}

const char* to_string(GFMethod m) noexcept {
  switch (m) {
    case GFMethod::CircleClosedForm: return "circle-closed-form";
    case GFMethod::CgfIntegral: return "cgf-integral";
    case GFMethod::Relation: return "relation";
  }
  return "unknown";
}

const char* to_string(Q00Case c) noexcept {
  switch (c) {
    case Q00Case::A: return "a";
    case Q00Case::B: return "b";
    case Q00Case::C: return "c";
  }
  return "?";
}

GFValue q00_simple(double z) {
  require_simple_range(z);
  return q00_simple_continued(z);
}

GFValue q00_simple_continued(double z) {
  if (!(std::abs(z) < 0.25)) throw Error(ErrorKind::OutOfRange, "|z| must be below 1/4");
  if (z == 0.0) return closed_form(1.0, z, 0.0);
  return closed_form(q00_integral(z), z, 1e-13);
}

GFValue q10_simple(double z) {
  require_simple_range(z);
  // u = 1 - v^2 removes the 1/sqrt(1 - u) endpoint singularity.
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0;
  const double v = ts.integrate(
      [z](double t) {
        return circle_kernel(1.0 - t * t, z) * 2.0 * std::sqrt(std::max(2.0 - t * t, 0.0));
      },
      0.0, std::numbers::sqrt2, 1e-14, &err);
  return closed_form(v / (2.0 * std::numbers::pi), z, std::max(err, 1e-13));
}

GFValue q11_from_relation(const StepSet& s, double z, double q10, double q01, double q00) {
  if (!(z > 0.0)) throw Error(ErrorKind::OutOfRange, "z must be positive");
  const double lead = s.size() - 1.0 / z;
  if (std::abs(lead) <= 1e-12 * s.size()) {
    throw Error(ErrorKind::RemovableSingularity, "z = 1/|S| is a removable singularity of the relation");
  }
  const KernelPolys k = kernel_polys(s);
  const double rhs = k.c.at_one() * q10 + k.c_t.at_one() * q01 - s.delta(-1, -1) * q00 - 1.0 / z;
  GFValue v;
  v.value = rhs / lead;
  v.z = z;
  v.method = GFMethod::Relation;
  return v;
}

ContourValue qx0_integral(const StepSet& s, cdouble x, double z, const CGF& w) {
  const CurveTrace tr = trace_curve_M(s, z, kMembershipNodes);
  require_glues(w, tr);
  if (point_in_G_M(s, x, tr) != DomainPosition::Inside) {
    throw Error(ErrorKind::PointOutsideDomain, "x is not strictly inside G(M_z)");
  }
  return cauchy_integral(s, x, z, w);
}

Q00Dispatch q00_case(const StepSet& s) {
  const KernelPolys k = kernel_polys(s);
  Q00Dispatch d;
  if (k.c.c[0] == 0) {
    d.which = Q00Case::A;
  } else if (k.c.c[1] == 0 && k.c.c[2] == 0) {
    d.which = Q00Case::C;
  } else {
    d.which = Q00Case::B;
    const std::array<double, 3> coeffs = {double(k.c.c[0]), double(k.c.c[1]), double(k.c.c[2])};
    d.roots = polynomial_roots(coeffs);
  }
  return d;
}

GFValue q00_general(const StepSet& s, double z, const CGF& w, const CGF* w_L) {
  const KernelPolys k = kernel_polys(s);
  const Q00Dispatch d = q00_case(s);
  const CurveTrace tr = trace_curve_M(s, z, kMembershipNodes);
  require_glues(w, tr);
  switch (d.which) {
    case Q00Case::A: {
      // w(x) = r/x + O(1) near 0, so the integral behaves like -A0/w(x) - A1/w(x)^2.
      const ContourValue a0 = refined_integral(
          s, z, w, [&](cdouble t, double y) { return t * y * w.dw(t, z); });
      if (k.c.c[1] != 0) {
        return integral_value((-a0.value / (w.residue * k.c.c[1])).real(), z, a0.error_estimate);
      }
      const ContourValue a1 = refined_integral(
          s, z, w, [&](cdouble t, double y) { return t * y * w.dw(t, z) * w.w(t, z); });
      return integral_value((-a1.value / (w.residue * w.residue * k.c.c[2])).real(), z,
                            a0.error_estimate + a1.error_estimate);
    }
    case Q00Case::B: {
      const cdouble root = d.roots.front();
      if (point_in_G_M(s, root, tr) != DomainPosition::Inside) {
        throw Error(ErrorKind::RootOutsideDomain, "root of c is not inside G(M_z)");
      }
      const ContourValue iv = cauchy_integral(s, root, z, w);
      return integral_value((-iv.value / double(k.c.c[0])).real(), z, iv.error_estimate);
    }
    case Q00Case::C: {
      if (w_L == nullptr) {
        throw Error(ErrorKind::CGFUnavailable, "case (c) needs a gluing function for G(L_z)");
      }
      const StepSet mirror = s.mirrored();
      const CurveTrace tr_L = trace_curve_M(mirror, z, kMembershipNodes);
      require_glues(*w_L, tr_L);
      for (cdouble x : {cdouble(0.5, 0.0), cdouble(0.25, 0.0), cdouble(0.0, 0.5), cdouble(-0.5, 0.0)}) {
        if (point_in_G_M(s, x, tr) != DomainPosition::Inside) continue;
        const cdouble y = y_branches(s, x, z).first;
        if (std::abs(y) > 1.0 || point_in_G_M(mirror, y, tr_L) != DomainPosition::Inside) continue;
        const ContourValue ix = cauchy_integral(s, x, z, w);
        const ContourValue jy = cauchy_integral(mirror, y, z, *w_L);
        const double denom = k.c.c[0] + k.c_t.c[0] - s.delta(-1, -1);
        const cdouble q = (x * y / z - ix.value - jy.value) / denom;
        GFValue v = integral_value(q.real(), z, ix.error_estimate + jy.error_estimate);
        v.flags.push_back("kernel-root");
        return v;
      }
      throw Error(ErrorKind::RootOutsideDomain, "no kernel root found inside both domains");
    }
  }
  throw Error(ErrorKind::CaseUndetermined, "unreachable case");
}

GFValue q10_general(const StepSet& s, double z, const CGF& w) {
  const KernelPolys k = kernel_polys(s);
  if (k.c.at_one() == 0) throw Error(ErrorKind::DivisionByZero, "c(1) = 0");
  const CurveTrace tr = trace_curve_M(s, z, kMembershipNodes);
  require_glues(w, tr);
  double c0q00 = 0.0;
  double err = 0.0;
  if (k.c.c[0] != 0) {
    const GFValue q00 = q00_general(s, z, w);
    c0q00 = k.c.c[0] * q00.value;
    err += q00.error_estimate;
  }
  const DomainPosition pos = point_in_G_M(s, 1.0, tr);
  if (pos != DomainPosition::Outside) {
    // On the boundary the symmetric nodes give the principal value, which is
    // the boundary limit because the two poles of the kernel merge there.
    const ContourValue iv = cauchy_integral(s, 1.0, z, w);
    GFValue v = integral_value((iv.value.real() + c0q00) / k.c.at_one(), z, err + iv.error_estimate);
    if (pos == DomainPosition::OnBoundary) v.flags.push_back("on-boundary");
    return v;
  }
  const cdouble y0 = y_branches(s, 1.0, z).first;
  const cdouble xp = x_branches(s, y0, z).first;
  if (point_in_G_M(s, xp, tr) != DomainPosition::Inside) {
    throw Error(ErrorKind::CaseUndetermined, "X0(Y0(1)) is not inside G(M_z)");
  }
  const ContourValue iv = cauchy_integral(s, xp, z, w);
  const cdouble rhs = iv.value + c0q00 + y0 / z * (1.0 - xp);
  GFValue v = integral_value(rhs.real() / k.c.at_one(), z, err + iv.error_estimate);
  v.flags.push_back("composite-point");
  return v;
}

GFValue q01_general(const StepSet& s, double z, const CGF& w) {
  return q10_general(s.mirrored(), z, w);
}

cdouble q00_at_kernel_root(const StepSet& s, cdouble x, cdouble y, double z, cdouble qx0,
                           cdouble q0y) {
  const int origin = s.delta(-1, -1);
  if (origin == 0) throw Error(ErrorKind::DivisionByZero, "no (-1,-1) step: Q(0,0) drops out");
  const KernelPolys k = kernel_polys(s);
  return (k.c(x) * qx0 + k.c_t(y) * q0y - x * y / z) / double(origin);
}

}  // namespace qwalk
