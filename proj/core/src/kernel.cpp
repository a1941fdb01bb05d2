#include "qwalk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

void require_positive(double z) {
  if (!(z > 0.0)) throw Error(ErrorKind::OutOfRange, "z must be positive");
}

std::array<double, 5> discriminant(const QuadPoly& a, const QuadPoly& b, const QuadPoly& c,
                                   double z) {
  // [b(t) - t/z]^2 - 4 a(t) c(t)
  const std::array<double, 3> bz = {double(b.c[0]), double(b.c[1]) - 1.0 / z, double(b.c[2])};
  std::array<double, 5> d{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d[i + j] += bz[i] * bz[j] - 4.0 * a.c[i] * c.c[j];
  }
  return d;
}

std::array<BranchPoint, 4> sorted_roots(const std::array<double, 5>& coeffs) {
  const auto finite = polynomial_roots(coeffs);
  std::array<BranchPoint, 4> out{};
  std::vector<cdouble> r = finite;
  std::sort(r.begin(), r.end(), [](cdouble a, cdouble b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return a.imag() < b.imag();
  });
  for (std::size_t k = 0; k < 4; ++k) {
    if (k < r.size()) {
      out[k].value = r[k];
    } else {
      out[k].infinite = true;
    }
  }
  return out;
}

bool real_positive(const BranchPoint& p) {
  return !p.infinite && p.value.real() > 0.0 &&
         std::abs(p.value.imag()) <= kClusterTolerance * std::max(1.0, std::abs(p.value));
}

bool collided(const std::array<BranchPoint, 4>& r) {
  if (r[1].infinite || r[2].infinite) return false;
  return std::abs(r[1].value - r[2].value) <=
         kClusterTolerance * std::max(1.0, std::abs(r[1].value));
}

// Ordered roots of A t^2 + B t + C = 0 with |first| <= |second|.
BranchPair quadratic_roots(cdouble A, cdouble B, cdouble C) {
  BranchPair p;
  if (A == 0.0) {
    if (B == 0.0) {
      throw Error(ErrorKind::DegenerateQuadratic, "kernel quadratic degenerates to a constant");
    }
    p.first = -C / B;
    p.second_infinite = true;
    return p;
  }
  const cdouble sq = std::sqrt(B * B - 4.0 * A * C);
  // Cancellation-free pair: q = -(B + sign * sqrt) / 2 with the sign maximizing |q|.
  const cdouble q1 = -0.5 * (B + sq);
  const cdouble q2 = -0.5 * (B - sq);
  const cdouble q = std::abs(q1) >= std::abs(q2) ? q1 : q2;
  cdouble r1, r2;
  if (q == 0.0) {
    r1 = r2 = 0.0;
  } else {
    r1 = q / A;
    r2 = C / q;
  }
  if (std::abs(r2) < std::abs(r1)) std::swap(r1, r2);
  p.first = r1;
  p.second = r2;
  return p;
}

// Separates the two roots at t: on a tie of moduli, the branch with smaller
// modulus just above t is continued to t.
template <class Coeffs>
BranchPair separated_roots(Coeffs coeffs, cdouble t) {
  auto [A, B, C] = coeffs(t);
  BranchPair p = quadratic_roots(A, B, C);
  if (p.second_infinite) return p;
  const double m1 = std::abs(p.first), m2 = std::abs(p.second);
  if (m2 - m1 > 1e-12 * std::max(1.0, m2)) return p;
  if (std::abs(p.first - p.second) <= 1e-14 * std::max(1.0, m2)) return p;
  const double eta = 1e-7 * std::max(1.0, std::abs(t));
  auto [A2, B2, C2] = coeffs(t + cdouble(0.0, eta));
  const BranchPair q = quadratic_roots(A2, B2, C2);
  if (std::abs(q.first - p.second) < std::abs(q.first - p.first)) std::swap(p.first, p.second);
  return p;
}

}  // namespace

double BranchPoint::modulus() const {
  return infinite ? std::numeric_limits<double>::infinity() : std::abs(value);
}

KernelPolys kernel_polys(const StepSet& s) {
  KernelPolys k;
  for (int t = -1; t <= 1; ++t) {
    k.a.c[t + 1] = s.delta(t, 1);
    k.b.c[t + 1] = s.delta(t, 0);
    k.c.c[t + 1] = s.delta(t, -1);
    k.a_t.c[t + 1] = s.delta(1, t);
    k.b_t.c[t + 1] = s.delta(0, t);
    k.c_t.c[t + 1] = s.delta(-1, t);
  }
  return k;
}

cdouble kernel_eval(const StepSet& s, cdouble x, cdouble y, double z) {
  if (z == 0.0) throw Error(ErrorKind::OutOfRange, "z must be nonzero");
  // Expanded form avoids dividing by x or y.
  cdouble acc = 0.0;
  for (const Step& st : s.steps()) acc += std::pow(x, st.i + 1) * std::pow(y, st.j + 1);
  return acc - x * y / z;
}

cdouble kernel_quadratic_in_x(const StepSet& s, cdouble x, cdouble y, double z) {
  const KernelPolys k = kernel_polys(s);
  return k.a_t(y) * x * x + (k.b_t(y) - y / z) * x + k.c_t(y);
}

cdouble kernel_quadratic_in_y(const StepSet& s, cdouble x, cdouble y, double z) {
  const KernelPolys k = kernel_polys(s);
  return k.a(x) * y * y + (k.b(x) - x / z) * y + k.c(x);
}

std::array<double, 5> discriminant_x(const StepSet& s, double z) {
  require_positive(z);
  const KernelPolys k = kernel_polys(s);
  return discriminant(k.a, k.b, k.c, z);
}

std::array<double, 5> discriminant_y(const StepSet& s, double z) {
  require_positive(z);
  const KernelPolys k = kernel_polys(s);
  return discriminant(k.a_t, k.b_t, k.c_t, z);
}

bool branch_ordering_holds(const std::array<BranchPoint, 4>& r) {
  if (r[0].infinite || !real_positive(r[1]) || !real_positive(r[2])) return false;
  const double x2 = r[1].value.real(), x3 = r[2].value.real();
  return std::abs(r[0].value) < x2 && x2 < 1.0 && 1.0 < x3 && x3 < r[3].modulus();
}

BranchPoints branch_points(const StepSet& s, double z) {
  require_positive(z);
  BranchPoints bp;
  bp.z = z;
  bp.x = sorted_roots(discriminant_x(s, z));
  bp.y = sorted_roots(discriminant_y(s, z));
  bp.ordering_asserted = z < 1.0 / s.size();
  bp.x_ordered = branch_ordering_holds(bp.x);
  bp.y_ordered = branch_ordering_holds(bp.y);
  bp.x_collided = collided(bp.x);
  bp.y_collided = collided(bp.y);
  return bp;
}

BranchPair y_branches(const StepSet& s, cdouble x, double z) {
  require_positive(z);
  const KernelPolys k = kernel_polys(s);
  return separated_roots(
      [&](cdouble t) {
        return std::array<cdouble, 3>{k.a(t), k.b(t) - t / z, k.c(t)};
      },
      x);
}

BranchPair x_branches(const StepSet& s, cdouble y, double z) {
  require_positive(z);
  const KernelPolys k = kernel_polys(s);
  return separated_roots(
      [&](cdouble t) {
        return std::array<cdouble, 3>{k.a_t(t), k.b_t(t) - t / z, k.c_t(t)};
      },
      y);
}

int winding_number(const std::vector<cdouble>& polyline, cdouble point) {
  double total = 0.0;
  const std::size_t n = polyline.size();
  for (std::size_t k = 0; k < n; ++k) {
    const cdouble a = polyline[k] - point;
    const cdouble b = polyline[(k + 1) % n] - point;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

double distance_to_polyline(const std::vector<cdouble>& polyline, cdouble point) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = polyline.size();
  for (std::size_t k = 0; k < n; ++k) {
    const cdouble a = polyline[k];
    const cdouble b = polyline[(k + 1) % n];
    const cdouble ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((point - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::abs(point - (a + t * ab)));
  }
  return best;
}

CurveTrace trace_curve_M(const StepSet& s, double z, int m) {
  require_positive(z);
  if (m < 16) throw Error(ErrorKind::OutOfRange, "trace needs at least 16 points");
  const KernelPolys k = kernel_polys(s);
  if (k.a_t.is_zero()) {
    throw Error(ErrorKind::SlitDegenerate, "no step with i = +1: X is not two-valued");
  }
  const BranchPoints bp = branch_points(s, z);

  const auto& yr = bp.y;
  auto is_real = [](const BranchPoint& p) {
    return !p.infinite && std::abs(p.value.imag()) <= kClusterTolerance * std::max(1.0, std::abs(p.value));
  };
  if (!is_real(yr[1]) || yr[2].infinite || !is_real(yr[2]) || bp.y_collided) {
    throw Error(ErrorKind::GenusZeroRegime, "branch points y2 and y3 have merged at this z");
  }
  if (!is_real(yr[0])) {
    throw Error(ErrorKind::SlitDegenerate, "branch point y1 is not real");
  }
  double y1 = yr[0].value.real();
  double y2 = yr[1].value.real();
  if (y1 > y2) std::swap(y1, y2);
  if (!(y2 - y1 > kClusterTolerance * std::max(1.0, std::abs(y2)))) {
    throw Error(ErrorKind::SlitDegenerate, "slit [y1, y2] has collapsed");
  }
  // a-tilde vanishing inside the slit sends the curve through infinity.
  {
    const auto roots = polynomial_roots(std::array<double, 3>{double(k.a_t.c[0]), double(k.a_t.c[1]),
                                                              double(k.a_t.c[2])});
    for (cdouble r : roots) {
      if (std::abs(r.imag()) < 1e-14 && r.real() >= y1 && r.real() <= y2) {
        throw Error(ErrorKind::SlitDegenerate, "M_z passes through infinity");
      }
    }
  }

  const double mid = 0.5 * (y1 + y2);
  const double half = 0.5 * (y2 - y1);

  auto quadratic_at = [&](double y) {
    return std::array<double, 3>{k.a_t(y), k.b_t(y) - y / z, k.c_t(y)};
  };

  // Sign of Im X0(y + i0): fixed along the open slit since the two roots never meet there.
  int upper_sign = 1;
  {
    const double eta = 1e-6 * half;
    const BranchPair off = x_branches(s, cdouble(mid, eta), z);
    const auto [A, B, C] = quadratic_at(mid);
    const double disc = B * B - 4.0 * A * C;
    const cdouble plus((-B) / (2.0 * A), std::sqrt(std::max(-disc, 0.0)) / (2.0 * std::abs(A)));
    const cdouble minus = std::conj(plus);
    upper_sign = std::abs(off.first - plus) <= std::abs(off.first - minus) ? 1 : -1;
  }

  auto x_at = [&](double y, int sign) {
    const auto [A, B, C] = quadratic_at(y);
    const double disc = B * B - 4.0 * A * C;
    return cdouble(-B / (2.0 * A), sign * std::sqrt(std::max(-disc, 0.0)) / (2.0 * std::abs(A)));
  };
  auto dx_dy = [&](cdouble x, double y) {
    const cdouble kx = 2.0 * k.a_t(y) * x + k.b_t(y) - y / z;
    const cdouble ky = k.a_t.derivative(y) * x * x + (k.b_t.derivative(y) - 1.0 / z) * x +
                       double(k.c_t.derivative(y));
    return -ky / kx;
  };

  CurveTrace tr;
  tr.z = z;
  tr.y1 = y1;
  tr.y2 = y2;
  tr.points.resize(m);
  tr.tangents.resize(m);
  tr.y_values.resize(m);
  for (int j = 0; j < m; ++j) {
    const double phi = 2.0 * std::numbers::pi * (j + 0.5) / m;
    const double y = mid - half * std::cos(phi);
    const double dy = half * std::sin(phi);
    const int sign = phi < std::numbers::pi ? upper_sign : -upper_sign;
    const cdouble x = x_at(y, sign);
    tr.points[j] = x;
    tr.tangents[j] = dx_dy(x, y) * dy;
    tr.y_values[j] = y;
  }

  const cdouble x1 = bp.x[0].value;
  int w = winding_number(tr.points, x1);
  if (w < 0) {
    std::reverse(tr.points.begin(), tr.points.end());
    std::reverse(tr.tangents.begin(), tr.tangents.end());
    std::reverse(tr.y_values.begin(), tr.y_values.end());
    for (auto& t : tr.tangents) t = -t;
    w = -w;
  }
  tr.winding_x1 = w;
  tr.winding_x3 = bp.x[2].infinite ? 0 : winding_number(tr.points, bp.x[2].value);

  tr.closure_defect = std::max(std::abs(x_at(y1, 1) - x_at(y1, -1)),
                               std::abs(x_at(y2, 1) - x_at(y2, -1)));
  double conj_defect = 0.0;
  for (int j = 0; j < m; ++j) {
    conj_defect = std::max(conj_defect, std::abs(tr.points[j] - std::conj(tr.points[m - 1 - j])));
  }
  tr.conjugation_defect = conj_defect;

  bool outside = true;
  if (!bp.x[2].infinite) {
    const double x3 = bp.x[2].value.real();
    const bool x4_real = !bp.x[3].infinite && bp.x[3].value.real() > x3 &&
                         std::abs(bp.x[3].value.imag()) < kClusterTolerance;
    const double x4 = x4_real ? bp.x[3].value.real() : 10.0 * x3 + 10.0;
    for (int j = 1; j < 32 && outside; ++j) {
      outside = winding_number(tr.points, cdouble(x3 + (x4 - x3) * j / 32.0, 0.0)) == 0;
    }
  }
  tr.segment_x3_x4_outside = outside;
  return tr;
}

CurveTrace trace_curve_L(const StepSet& s, double z, int m) {
  return trace_curve_M(s.mirrored(), z, m);
}

DomainPosition point_in_G_M(const StepSet& s, cdouble x, const CurveTrace& trace) {
  const double z = trace.z;
  // x lies on M_z exactly when a kernel root in y sits on the real slit [y1, y2].
  try {
    const BranchPair ys = y_branches(s, x, z);
    const double tol = 1e-9 * std::max(1.0, std::abs(trace.y2));
    for (int r = 0; r < (ys.second_infinite ? 1 : 2); ++r) {
      const cdouble y = r == 0 ? ys.first : ys.second;
      if (std::abs(y.imag()) <= tol && y.real() >= trace.y1 - tol && y.real() <= trace.y2 + tol) {
        return DomainPosition::OnBoundary;
      }
    }
  } catch (const Error&) {
    // A degenerate quadratic at x only rules out the analytic test.
  }
  if (distance_to_polyline(trace.points, x) < 1e-7) return DomainPosition::OnBoundary;
  return winding_number(trace.points, x) != 0 ? DomainPosition::Inside : DomainPosition::Outside;
}

DomainPosition point_in_G_M(const StepSet& s, cdouble x, double z) {
  return point_in_G_M(s, x, trace_curve_M(s, z, 4096));
}

const char* to_string(DomainPosition p) noexcept {
  switch (p) {
    case DomainPosition::Inside: return "inside";
    case DomainPosition::Outside: return "outside";
    case DomainPosition::OnBoundary: return "on-boundary";
  }
  return "unknown";
}

}  // namespace qwalk
