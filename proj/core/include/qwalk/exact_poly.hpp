#pragma once

#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qwalk {

/// Univariate polynomial with rational coefficients, ascending powers, trimmed.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<mpq_class> coeffs);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const noexcept { return c_; }
  const mpq_class& coeff(int k) const;
  const mpq_class& leading() const { return c_.back(); }

  mpq_class operator()(const mpq_class& x) const;
  double operator()(double x) const;

  RatPoly derivative() const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const mpq_class& k, const RatPoly& a);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Quotient and remainder; throws std::domain_error for a zero divisor.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

/// Monic greatest common divisor (zero if both are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);

/// p / gcd(p, p'), made monic.
RatPoly squarefree_part(const RatPoly& p);

/// Removes factors of the variable: p(z) = z^k q(z) with q(0) != 0. Returns q.
RatPoly strip_zero_roots(const RatPoly& p, int* multiplicity = nullptr);

/// Sturm sequence p, p', -rem(p, p'), ...
std::vector<RatPoly> sturm_sequence(const RatPoly& p);

/// Number of distinct real roots of the sequence head in (lo, hi].
int count_real_roots(const std::vector<RatPoly>& sturm, const mpq_class& lo,
                     const mpq_class& hi);

/// Disjoint intervals (lo, hi], ascending, each holding exactly one real root of
/// the squarefree polynomial p in (lo, hi].
std::vector<std::pair<mpq_class, mpq_class>> isolate_real_roots(const RatPoly& p,
                                                                const mpq_class& lo,
                                                                const mpq_class& hi);

/// Bisects an isolating interval of a squarefree p down to width <= tol and returns its midpoint.
mpq_class refine_root(const RatPoly& p, std::pair<mpq_class, mpq_class> interval,
                      const mpq_class& tol);

/// Cauchy bound: every root has modulus below the returned value.
mpq_class root_bound(const RatPoly& p);

/// Polynomial in x whose coefficients are polynomials in a second variable z.
/// Entry k is the coefficient of x^k.
using BiPoly = std::vector<RatPoly>;

BiPoly trim(BiPoly p);
BiPoly derivative_x(const BiPoly& p);

/// Resultant with respect to x, as a polynomial in z. Computed exactly by
/// evaluating the Sylvester determinant at integer z and interpolating.
RatPoly resultant_x(const BiPoly& f, const BiPoly& g);

/// Exact determinant by fraction-carrying Gaussian elimination.
mpq_class determinant(std::vector<std::vector<mpq_class>> m);

}  // namespace qwalk
