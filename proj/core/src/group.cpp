#include "qwalk/group.hpp"

#include <optional>
#include <random>
#include <vector>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

// Arithmetic in GF(2^61 - 1), used to screen candidate orders cheaply before
// exact rational confirmation. Heights of rational iterates grow geometrically,
// so exact arithmetic is reserved for the final certificate.
__extension__ typedef unsigned __int128 U128;

class ModP {
 public:
  static constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;

  ModP() = default;
  explicit ModP(std::int64_t v) {
    std::int64_t r = v % static_cast<std::int64_t>(kP);
    if (r < 0) r += static_cast<std::int64_t>(kP);
    v_ = static_cast<std::uint64_t>(r);
  }
  static ModP from_rational(const mpq_class& q) {
    mpz_class p = q.get_num() % mpz_class(std::to_string(kP));
    mpz_class d = q.get_den() % mpz_class(std::to_string(kP));
    return ModP(p.get_si()) / ModP(d.get_si());
  }

  bool is_zero() const { return v_ == 0; }

  friend ModP operator+(ModP a, ModP b) { return raw(reduce(a.v_ + b.v_)); }
  friend ModP operator*(ModP a, ModP b) {
    const U128 t = static_cast<U128>(a.v_) * b.v_;
    std::uint64_t lo = static_cast<std::uint64_t>(t & kP);
    std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
    return raw(reduce(lo + hi));
  }
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

  ModP inverse() const {
    ModP result = raw(1), base = *this;
    std::uint64_t e = kP - 2;
    while (e) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

 private:
  static std::uint64_t reduce(std::uint64_t v) {
    v = (v & kP) + (v >> 61);
    return v >= kP ? v - kP : v;
  }
  static ModP raw(std::uint64_t v) {
    ModP m;
    m.v_ = v;
    return m;
  }
  std::uint64_t v_ = 0;
};

template <class F>
F field_const(int v);
template <>
mpq_class field_const<mpq_class>(int v) { return mpq_class(v); }
template <>
ModP field_const<ModP>(int v) { return ModP(v); }

template <class F>
bool is_zero(const F& v) {
  if constexpr (std::is_same_v<F, mpq_class>) {
    return sgn(v) == 0;
  } else {
    return v.is_zero();
  }
}

// sum_{k} w_k t^k for k in {-1, 0, 1}.
template <class F>
std::optional<F> laurent(int w_minus, int w_zero, int w_plus, const F& t) {
  F acc = field_const<F>(w_zero);
  if (w_plus) acc = acc + t;
  if (w_minus) {
    if (is_zero(t)) return std::nullopt;
    acc = acc + field_const<F>(1) / t;
  }
  return acc;
}

template <class F>
std::optional<std::pair<F, F>> psi_impl(const StepSet& s, const F& x, const F& y) {
  auto num = laurent(s.delta(-1, -1), s.delta(0, -1), s.delta(1, -1), x);
  auto den = laurent(s.delta(-1, 1), s.delta(0, 1), s.delta(1, 1), x);
  if (!num || !den || is_zero(*den) || is_zero(y)) return std::nullopt;
  return std::make_pair(x, *num / (*den * y));
}

template <class F>
std::optional<std::pair<F, F>> phi_impl(const StepSet& s, const F& x, const F& y) {
  auto num = laurent(s.delta(-1, -1), s.delta(-1, 0), s.delta(-1, 1), y);
  auto den = laurent(s.delta(1, -1), s.delta(1, 0), s.delta(1, 1), y);
  if (!num || !den || is_zero(*den) || is_zero(x)) return std::nullopt;
  return std::make_pair(*num / (*den * x), y);
}

// Orbit of p under Psi o Phi, up to `rounds` applications; nullopt on a pole.
template <class F>
std::optional<std::vector<std::pair<F, F>>> orbit(const StepSet& s, const F& x, const F& y,
                                                  int rounds) {
  std::vector<std::pair<F, F>> out;
  out.reserve(static_cast<std::size_t>(rounds) + 1);
  out.emplace_back(x, y);
  for (int r = 0; r < rounds; ++r) {
    const auto& [cx, cy] = out.back();
    auto a = phi_impl(s, cx, cy);
    if (!a) return std::nullopt;
    auto b = psi_impl(s, a->first, a->second);
    if (!b) return std::nullopt;
    out.push_back(*b);
  }
  return out;
}

[[noreturn]] void pole(const char* which) {
  throw Error(ErrorKind::PoleEncountered, std::string(which) + " has a pole at this point");
}

}  // namespace

bool generators_defined(const StepSet& s) {
  bool up = false, down = false, right = false, left = false;
  for (const Step& st : s.steps()) {
    up |= st.j == 1;
    down |= st.j == -1;
    right |= st.i == 1;
    left |= st.i == -1;
  }
  return up && down && right && left;
}

RationalPoint psi(const StepSet& s, const RationalPoint& p) {
  auto r = psi_impl<mpq_class>(s, p.x, p.y);
  if (!r) pole("Psi");
  return {r->first, r->second};
}

RationalPoint phi(const StepSet& s, const RationalPoint& p) {
  auto r = phi_impl<mpq_class>(s, p.x, p.y);
  if (!r) pole("Phi");
  return {r->first, r->second};
}

RationalPoint apply_alternating_word(const StepSet& s, const RationalPoint& p, int length) {
  RationalPoint q = p;
  for (int k = 0; k < length; ++k) q = (k % 2 == 0) ? phi(s, q) : psi(s, q);
  return q;
}

mpq_class step_polynomial(const StepSet& s, const RationalPoint& p) {
  mpq_class acc = 0;
  for (const Step& st : s.steps()) {
    if ((st.i < 0 && sgn(p.x) == 0) || (st.j < 0 && sgn(p.y) == 0)) {
      pole("step polynomial");
    }
    mpq_class term = 1;
    if (st.i == 1) term *= p.x;
    if (st.i == -1) term /= p.x;
    if (st.j == 1) term *= p.y;
    if (st.j == -1) term /= p.y;
    acc += term;
  }
  return acc;
}

bool invariant_check(const StepSet& s, const RationalPoint& p) {
  const mpq_class v = step_polynomial(s, p);
  return step_polynomial(s, psi(s, p)) == v && step_polynomial(s, phi(s, p)) == v;
}

GroupOrderResult group_order(const StepSet& s, const GroupOptions& options) {
  if (!generators_defined(s)) {
    throw Error(ErrorKind::DegenerateGenerators,
                "group generators need steps with i = +1, i = -1, j = +1 and j = -1");
  }
  const int rounds = options.max_half_order;
  std::mt19937_64 rng(options.seed);

  struct PanelPoint {
    RationalPoint exact;
    std::vector<std::pair<ModP, ModP>> orbit;
  };
  std::vector<PanelPoint> panel;
  for (int k = 0; k < options.panel_size; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt <= options.max_retries && !placed; ++attempt) {
      RationalPoint p = random_rational_point(rng, options.max_height);
      auto o = orbit(s, ModP::from_rational(p.x), ModP::from_rational(p.y), rounds);
      if (!o) continue;
      panel.push_back({p, std::move(*o)});
      placed = true;
    }
    if (!placed) {
      throw Error(ErrorKind::TestPointExhaustion,
                  "every sampled test point met a pole of the generators");
    }
  }

  for (int m = 1; m <= rounds; ++m) {
    bool screened = true;
    for (const auto& pp : panel) {
      if (!(pp.orbit[m] == pp.orbit[0])) {
        screened = false;
        break;
      }
    }
    if (!screened) continue;

    // Certificate over Q. A pole here means the modular screen hid a rational
    // pole, which cannot happen for a point whose orbit reduced cleanly.
    bool exact_identity = true;
    for (const auto& pp : panel) {
      auto o = orbit<mpq_class>(s, pp.exact.x, pp.exact.y, m);
      if (!o || !(o->back().first == pp.exact.x && o->back().second == pp.exact.y)) {
        exact_identity = false;
        break;
      }
    }
    if (!exact_identity) continue;
    if (m == 1) {
      throw Error(ErrorKind::DegenerateGenerators, "Psi o Phi is the identity");
    }
    GroupOrderResult r;
    r.kind = GroupOrderResult::Kind::Finite;
    r.order = 2 * m;
    return r;
  }
  GroupOrderResult r;
  r.kind = GroupOrderResult::Kind::ExceedsBound;
  r.bound = 2 * rounds;
  return r;
}

}  // namespace qwalk
