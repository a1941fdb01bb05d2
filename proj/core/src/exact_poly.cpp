#include "qwalk/exact_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qwalk {

RatPoly::RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

const mpq_class& RatPoly::coeff(int k) const {
  static const mpq_class zero = 0;
  if (k < 0 || k > degree()) return zero;
  return c_[static_cast<std::size_t>(k)];
}

mpq_class RatPoly::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RatPoly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RatPoly RatPoly::derivative() const {
  std::vector<mpq_class> d;
  for (int k = 1; k <= degree(); ++k) d.push_back(c_[static_cast<std::size_t>(k)] * k);
  return RatPoly(std::move(d));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k < a.c_.size()) c[k] += a.c_[k];
    if (k < b.c_.size()) c[k] += b.c_[k];
  }
  return RatPoly(std::move(c));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + mpq_class(-1) * b; }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(c));
}

RatPoly operator*(const mpq_class& k, const RatPoly& a) {
  std::vector<mpq_class> c(a.c_);
  for (auto& v : c) v *= k;
  return RatPoly(std::move(c));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPoly{}, a};
  std::vector<mpq_class> q(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    const mpq_class f = r[static_cast<std::size_t>(k)] / b.leading();
    q[static_cast<std::size_t>(k - db)] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coeff(j);
  }
  r.resize(static_cast<std::size_t>(db));
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return mpq_class(1) / x.leading() * x;
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.degree() <= 0) return p;
  RatPoly g = gcd(p, p.derivative());
  RatPoly q = divmod(p, g).first;
  return mpq_class(1) / q.leading() * q;
}

RatPoly strip_zero_roots(const RatPoly& p, int* multiplicity) {
  int k = 0;
  while (k <= p.degree() && sgn(p.coeff(k)) == 0) ++k;
  if (multiplicity) *multiplicity = p.is_zero() ? 0 : k;
  if (p.is_zero() || k == 0) return p;
  std::vector<mpq_class> c(p.coeffs().begin() + k, p.coeffs().end());
  return RatPoly(std::move(c));
}

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  RatPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    RatPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(mpq_class(-1) * r);
  }
  return seq;
}

namespace {

int sign_changes(const std::vector<RatPoly>& seq, const mpq_class& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const std::vector<RatPoly>& sturm, const mpq_class& lo,
                     const mpq_class& hi) {
  return sign_changes(sturm, lo) - sign_changes(sturm, hi);
}

mpq_class root_bound(const RatPoly& p) {
  mpq_class m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, mpq_class(abs(p.coeff(k) / p.leading())));
  return m + 1;
}

std::vector<std::pair<mpq_class, mpq_class>> isolate_real_roots(const RatPoly& p,
                                                                const mpq_class& lo,
                                                                const mpq_class& hi) {
  std::vector<std::pair<mpq_class, mpq_class>> out;
  if (p.degree() <= 0) return out;
  const auto seq = sturm_sequence(p);
  std::vector<std::pair<mpq_class, mpq_class>> stack{{lo, hi}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const int n = count_real_roots(seq, a, b);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(a, b);
      continue;
    }
    mpq_class mid = (a + b) / 2;
    stack.emplace_back(mid, b);
    stack.emplace_back(a, mid);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

mpq_class refine_root(const RatPoly& p, std::pair<mpq_class, mpq_class> interval,
                      const mpq_class& tol) {
  auto [a, b] = interval;
  if (sgn(p(b)) == 0) return b;
  // A simple root in (a, b] changes sign across the interval.
  int sa = sgn(p(a));
  while (b - a > tol) {
    mpq_class mid = (a + b) / 2;
    // Keep the midpoint small in height.
    mpf_class approx(mid, 256);
    mpq_class m(approx);
    if (!(m > a && m < b)) m = mid;
    const int sm = sgn(p(m));
    if (sm == 0) return m;
    if (sm == sa) {
      a = m;
    } else {
      b = m;
    }
  }
  return (a + b) / 2;
}

BiPoly trim(BiPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

BiPoly derivative_x(const BiPoly& p) {
  BiPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(mpq_class(static_cast<long>(k)) * p[k]);
  return trim(std::move(d));
}

mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const mpq_class f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

RatPoly resultant_x(const BiPoly& f_in, const BiPoly& g_in) {
  const BiPoly f = trim(f_in);
  const BiPoly g = trim(g_in);
  if (f.empty() || g.empty()) return {};
  const int m = static_cast<int>(f.size()) - 1;
  const int n = static_cast<int>(g.size()) - 1;
  int df = 0, dg = 0;
  for (const auto& c : f) df = std::max(df, c.degree());
  for (const auto& c : g) dg = std::max(dg, c.degree());
  const int bound = n * df + m * dg;
  if (m + n == 0) return RatPoly({mpq_class(1)});

  std::vector<mpq_class> xs, ys;
  for (int k = 0; k <= bound; ++k) {
    const mpq_class z(k);
    const int size = m + n;
    std::vector<std::vector<mpq_class>> syl(static_cast<std::size_t>(size),
                                            std::vector<mpq_class>(static_cast<std::size_t>(size)));
    // Rows hold coefficients from the leading power down.
    for (int r = 0; r < n; ++r) {
      for (int t = 0; t <= m; ++t) syl[r][r + t] = f[static_cast<std::size_t>(m - t)](z);
    }
    for (int r = 0; r < m; ++r) {
      for (int t = 0; t <= n; ++t) syl[n + r][r + t] = g[static_cast<std::size_t>(n - t)](z);
    }
    xs.push_back(z);
    ys.push_back(determinant(std::move(syl)));
  }

  // Newton divided differences, then expand to monomial form.
  std::vector<mpq_class> dd = ys;
  const std::size_t pts = xs.size();
  for (std::size_t level = 1; level < pts; ++level) {
    for (std::size_t i = pts - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  }
  RatPoly result({dd[pts - 1]});
  for (std::size_t i = pts - 1; i-- > 0;) {
    result = result * RatPoly({-xs[i], mpq_class(1)}) + RatPoly({dd[i]});
  }
  return result;
}

}  // namespace qwalk
