#include "qwalk/singular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qwalk/error.hpp"
#include "qwalk/exact_poly.hpp"
#include "qwalk/kernel.hpp"

namespace qwalk {

namespace {

struct LogMoments {
  double p = 0.0;                   // sum d e^{iu + jv}
  double gu = 0.0, gv = 0.0;        // gradient
  double huu = 0.0, huv = 0.0, hvv = 0.0;
};

LogMoments moments(const std::vector<Step>& steps, double u, double v) {
  LogMoments m;
  for (const Step& st : steps) {
    const double w = std::exp(st.i * u + st.j * v);
    m.p += w;
    m.gu += st.i * w;
    m.gv += st.j * w;
    m.huu += st.i * st.i * w;
    m.huv += st.i * st.j * w;
    m.hvv += st.j * st.j * w;
  }
  return m;
}

double relative_residual(const LogMoments& m) {
  return std::max(std::abs(m.gu), std::abs(m.gv)) / m.p;
}

constexpr double kNewtonTolerance = 1e-12;
constexpr int kNewtonCap = 100;
constexpr double kLogBox = 60.0;

// Root of a monotone increasing function on [lo, hi].
template <class F>
double bisect_increasing(F f, double lo, double hi) {
  for (int k = 0; k < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++k) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<CriticalPoint> nested_bisection(const std::vector<Step>& steps) {
  auto u_of_v = [&](double v) -> std::optional<double> {
    auto gu = [&](double u) { return moments(steps, u, v).gu; };
    if (gu(-kLogBox) >= 0.0 || gu(kLogBox) <= 0.0) return std::nullopt;
    return bisect_increasing(gu, -kLogBox, kLogBox);
  };
  auto gv = [&](double v) {
    const auto u = u_of_v(v);
    return u ? moments(steps, *u, v).gv : std::nan("");
  };
  const double lo = gv(-kLogBox), hi = gv(kLogBox);
  if (!(lo < 0.0 && hi > 0.0)) return std::nullopt;
  const double v = bisect_increasing(gv, -kLogBox, kLogBox);
  const auto u = u_of_v(v);
  if (!u) return std::nullopt;
  const LogMoments m = moments(steps, *u, v);
  CriticalPoint cp;
  cp.alpha = std::exp(*u);
  cp.beta = std::exp(v);
  cp.z_g = 1.0 / m.p;
  cp.used_bisection = true;
  cp.residual = relative_residual(m);
  return cp;
}

void require_non_singular(const StepSet& s) {
  if (is_singular(s)) throw Error(ErrorKind::SingularWalk, "singular walk: " + s.to_string());
}

double inverse_of(double denom, const char* what) {
  if (denom == 0.0) throw Error(ErrorKind::DivisionByZero, std::string("no finite ") + what);
  return 1.0 / denom;
}

BiPoly discriminant_bipoly(const StepSet& s) {
  // (z b(x) - x)^2 - 4 z^2 a(x) c(x), coefficients in z.
  const KernelPolys k = kernel_polys(s);
  BiPoly zb(3);
  for (int t = 0; t < 3; ++t) zb[t] = RatPoly({mpq_class(0), mpq_class(k.b.c[t])});
  zb[1] = zb[1] - RatPoly({mpq_class(1)});
  BiPoly d(5);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const mpq_class ac(4 * k.a.c[i] * k.c.c[j]);
      d[i + j] = d[i + j] + zb[i] * zb[j] - RatPoly({mpq_class(0), mpq_class(0), ac});
    }
  }
  d = trim(d);
  while (!d.empty() && d.front().is_zero()) d.erase(d.begin());
  return d;
}

std::vector<cdouble> finite_roots(const std::array<BranchPoint, 4>& r) {
  std::vector<cdouble> out;
  for (const BranchPoint& p : r) {
    if (!p.infinite) out.push_back(p.value);
  }
  return out;
}

// A root z of the resultant is accepted when d(., z) has a real positive double
// root that splits into two real positive roots just below z.
bool is_collision(const StepSet& s, double z) {
  const auto real_pos = [](cdouble v, double tol) {
    return v.real() > 0.0 && std::abs(v.imag()) <= tol * std::max(1.0, std::abs(v));
  };
  const std::vector<cdouble> at = finite_roots(branch_points(s, z).x);
  std::optional<cdouble> mid;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < at.size(); ++i) {
    for (std::size_t j = i + 1; j < at.size(); ++j) {
      const double gap = std::abs(at[i] - at[j]);
      const cdouble m = 0.5 * (at[i] + at[j]);
      if (gap < best && gap <= 1e-3 * std::max(1.0, std::abs(m)) && real_pos(m, 1e-3)) {
        best = gap;
        mid = m;
      }
    }
  }
  if (!mid) return false;
  const double mag = std::max(1.0, std::abs(*mid));
  int split_roots = 0;
  for (cdouble v : finite_roots(branch_points(s, z * (1.0 - 1e-7)).x)) {
    if (std::abs(v - *mid) < 1e-2 * mag && real_pos(v, 1e-6)) ++split_roots;
  }
  return split_roots == 2;
}

FirstSingularity pick(Candidate c) { return {c, 0.0, false, std::nullopt}; }

FirstSingularity split(Sign cov, Candidate if_nonneg, Candidate if_nonpos) {
  if (cov == Sign::Positive) return pick(if_nonneg);
  if (cov == Sign::Negative) return pick(if_nonpos);
  return {if_nonneg, 0.0, true, if_nonpos};
}

FirstSingularity equal_pair(Candidate a, Candidate b) { return {a, 0.0, true, b}; }

Sign sign_of(int v) { return v > 0 ? Sign::Positive : (v < 0 ? Sign::Negative : Sign::Zero); }

}  // namespace

CriticalPoint critical_point(const StepSet& s) {
  require_non_singular(s);
  if (!s.has_interior_origin()) {
    throw Error(ErrorKind::NoPositiveSolution,
                "origin is not interior to the step hull of " + s.to_string());
  }
  const std::vector<Step> steps = s.steps();
  double u = 0.0, v = 0.0;
  LogMoments m = moments(steps, u, v);
  double res = relative_residual(m);
  for (int it = 0; it < kNewtonCap; ++it) {
    if (res <= kNewtonTolerance) {
      return {std::exp(u), std::exp(v), 1.0 / m.p, it, false, res};
    }
    const double det = m.huu * m.hvv - m.huv * m.huv;
    if (!(det > 0.0)) break;
    const double du = -(m.hvv * m.gu - m.huv * m.gv) / det;
    const double dv = -(-m.huv * m.gu + m.huu * m.gv) / det;
    double step = 1.0;
    LogMoments next;
    double next_res = 0.0;
    for (int halving = 0; halving < 60; ++halving) {
      next = moments(steps, u + step * du, v + step * dv);
      next_res = relative_residual(next);
      if (next_res < res && std::isfinite(next.p)) break;
      step *= 0.5;
    }
    u += step * du;
    v += step * dv;
    m = next;
    res = next_res;
    if (std::abs(u) > kLogBox || std::abs(v) > kLogBox) break;
  }
  if (res <= kNewtonTolerance) return {std::exp(u), std::exp(v), 1.0 / m.p, kNewtonCap, false, res};
  if (auto cp = nested_bisection(steps)) return *cp;
  throw Error(ErrorKind::NoPositiveSolution, "critical point search failed for " + s.to_string());
}

double z_g_via_resultant(const StepSet& s) {
  require_non_singular(s);
  const BiPoly d = discriminant_bipoly(s);
  RatPoly r = resultant_x(d, derivative_x(d));
  if (r.is_zero()) {
    throw Error(ErrorKind::ValidationMismatch, "resultant vanishes identically");
  }
  r = squarefree_part(strip_zero_roots(r));
  const mpq_class hi = root_bound(r);
  for (const auto& interval : isolate_real_roots(r, mpq_class(0), hi)) {
    const double z = refine_root(r, interval, mpq_class(1, 1) / mpq_class("1000000000000000000000000000000"))
                         .get_d();
    if (z <= 0.0) continue;
    if (is_collision(s, z)) return z;
  }
  throw Error(ErrorKind::ValidationMismatch,
              "no resultant root corresponds to the x2 = x3 collision for " + s.to_string());
}

double z_Y(const StepSet& s) {
  const KernelPolys k = kernel_polys(s);
  return inverse_of(k.b.at_one() + 2.0 * std::sqrt(double(k.a.at_one() * k.c.at_one())), "z_Y");
}

double z_X(const StepSet& s) {
  const KernelPolys k = kernel_polys(s);
  return inverse_of(k.b_t.at_one() + 2.0 * std::sqrt(double(k.a_t.at_one() * k.c_t.at_one())),
                    "z_X");
}

char sign_char(Sign s) noexcept {
  switch (s) {
    case Sign::Negative: return '-';
    case Sign::Zero: return '0';
    case Sign::Positive: return '+';
  }
  return '?';
}

std::string_view to_string(Candidate c) noexcept {
  switch (c) {
    case Candidate::ZG: return "z_g";
    case Candidate::ZX: return "z_X";
    case Candidate::ZY: return "z_Y";
    case Candidate::InvS: return "1/|S|";
  }
  return "?";
}

double candidate_value(const SingularityReport& r, Candidate c) {
  switch (c) {
    case Candidate::ZG: return r.z_g;
    case Candidate::ZX: return r.z_X;
    case Candidate::ZY: return r.z_Y;
    case Candidate::InvS: return r.inv_S;
  }
  return 0.0;
}

SingularityReport classify_first_singularities(const StepSet& s) {
  require_non_singular(s);
  SingularityReport r;
  r.critical = critical_point(s);
  r.z_g = r.critical.z_g;
  try {
    r.z_g_resultant = z_g_via_resultant(s);
    r.method_gap = std::abs(*r.z_g_resultant - r.z_g);
  } catch (const Error&) {
    // The resultant route is a diagnostic; the Newton value stands on its own.
  }
  r.z_X = z_X(s);
  r.z_Y = z_Y(s);
  r.inv_S = 1.0 / s.size();
  const DriftData dd = drift(s);
  r.mx = dd.mx;
  r.my = dd.my;
  r.covariance = dd.covariance;
  r.drift_x = sign_of(dd.mx);
  r.drift_y = sign_of(dd.my);
  r.cov = sign_of(dd.covariance);

  using C = Candidate;
  const Sign sx = r.drift_x, sy = r.drift_y, cv = r.cov;
  const auto P = Sign::Positive, Z = Sign::Zero, N = Sign::Negative;
  if (sx == P && sy == P) {
    r.fs_Q10 = pick(C::ZY);
    r.fs_Q01 = pick(C::ZX);
    r.fs_Q11 = pick(C::InvS);
  } else if (sx == P && sy == Z) {
    r.fs_Q10 = equal_pair(C::ZY, C::InvS);
    r.fs_Q01 = split(cv, C::ZG, C::ZX);
    r.fs_Q11 = pick(C::InvS);
  } else if (sx == Z && sy == P) {
    r.fs_Q10 = split(cv, C::ZG, C::ZY);
    r.fs_Q01 = equal_pair(C::ZX, C::InvS);
    r.fs_Q11 = pick(C::InvS);
  } else if (sx == Z && sy == Z) {
    r.fs_Q10 = r.fs_Q01 = r.fs_Q11 = pick(C::InvS);
  } else if (sx == P && sy == N) {
    r.fs_Q10 = pick(C::ZY);
    r.fs_Q01 = pick(C::ZG);
    r.fs_Q11 = pick(C::ZY);
  } else if (sx == N && sy == P) {
    r.fs_Q10 = pick(C::ZG);
    r.fs_Q01 = pick(C::ZX);
    r.fs_Q11 = pick(C::ZX);
  } else if (sx == Z && sy == N) {
    r.fs_Q10 = split(cv, C::ZY, C::ZG);
    r.fs_Q01 = pick(C::ZG);
    // Mirror image of the (-,0) row; a positive covariance brings z_Y, not z_X.
    r.fs_Q11 = split(cv, C::ZY, C::ZG);
  } else if (sx == N && sy == Z) {
    r.fs_Q10 = pick(C::ZG);
    r.fs_Q01 = split(cv, C::ZX, C::ZG);
    r.fs_Q11 = split(cv, C::ZX, C::ZG);
  } else {
    r.fs_Q10 = r.fs_Q01 = r.fs_Q11 = pick(C::ZG);
  }
  for (FirstSingularity* f : {&r.fs_Q10, &r.fs_Q01, &r.fs_Q11}) {
    f->value = candidate_value(r, f->label);
  }
  return r;
}

}  // namespace qwalk
