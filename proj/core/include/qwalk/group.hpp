#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "qwalk/step_set.hpp"

namespace qwalk {

/// Point of C^2 with exact rational coordinates.
struct RationalPoint {
  mpq_class x;
  mpq_class y;

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

/// Psi(x, y) = (x, [sum_i d_{i,-1} x^i] / [sum_i d_{i,+1} x^i] / y). Throws PoleEncountered.
RationalPoint psi(const StepSet& s, const RationalPoint& p);

/// Phi(x, y) = ([sum_j d_{-1,j} y^j] / [sum_j d_{+1,j} y^j] / x, y). Throws PoleEncountered.
RationalPoint phi(const StepSet& s, const RationalPoint& p);

/// Applies the alternating word ...Psi Phi Psi Phi of the given length (Phi first).
RationalPoint apply_alternating_word(const StepSet& s, const RationalPoint& p, int length);

/// Exact value of sum d_{i,j} x^i y^j. Throws PoleEncountered on a zero coordinate
/// that carries a negative power.
mpq_class step_polynomial(const StepSet& s, const RationalPoint& p);

/// True iff the step polynomial takes the same value at p, Psi(p) and Phi(p).
bool invariant_check(const StepSet& s, const RationalPoint& p);

struct GroupOrderResult {
  enum class Kind { Finite, ExceedsBound };
  Kind kind = Kind::ExceedsBound;
  int order = 0;  ///< group order when Finite (even, >= 4)
  int bound = 0;  ///< largest order tested (2 * max_half_order) when ExceedsBound

  bool finite() const noexcept { return kind == Kind::Finite; }
};

struct GroupOptions {
  int max_half_order = 16;
  std::uint64_t seed = 1;
  int panel_size = 5;
  int max_height = 100;
  int max_retries = 20;
};

/// Smallest m <= max_half_order with (Psi o Phi)^m fixing every panel point exactly.
/// Throws DegenerateGenerators or TestPointExhaustion.
GroupOrderResult group_order(const StepSet& s, const GroupOptions& options = {});

/// Both generators are genuine birational maps: the walk has steps with j = +1,
/// j = -1, i = +1 and i = -1.
bool generators_defined(const StepSet& s);

/// Random point with coordinates p/q, 0 < |p| <= max_height, 0 < q <= max_height.
template <class Rng>
RationalPoint random_rational_point(Rng& rng, int max_height);

}  // namespace qwalk

#include <random>

namespace qwalk {

template <class Rng>
RationalPoint random_rational_point(Rng& rng, int max_height) {
  std::uniform_int_distribution<int> num(1, max_height);
  std::uniform_int_distribution<int> den(1, max_height);
  std::bernoulli_distribution neg(0.5);
  auto draw = [&] {
    const bool negative = neg(rng);
    const int n = num(rng);
    const int d = den(rng);
    mpq_class q(negative ? -n : n, d);
    q.canonicalize();
    return q;
  };
  RationalPoint p;
  p.x = draw();
  p.y = draw();
  return p;
}

}  // namespace qwalk
