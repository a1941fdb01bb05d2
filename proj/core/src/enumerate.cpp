#include "qwalk/enumerate.hpp"

#include <array>
#include <cctype>
#include <map>
#include <string>
#include <tuple>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

const mpz_class& zero_count() {
  static const mpz_class z = 0;
  return z;
}

void check_bounds(int n_max, int cap) {
  if (n_max < 0) throw Error(ErrorKind::OutOfRange, "n_max must be non-negative");
  if (n_max > cap) {
    throw Error(ErrorKind::ResourceLimit, "n_max = " + std::to_string(n_max) +
                                              " exceeds the enumeration cap " +
                                              std::to_string(cap));
  }
}

// Adds every step image of the source layer (dimension src_dim) into the
// destination (dimension src_dim + 1). Destination must be zeroed.
void propagate(const std::vector<Step>& steps, const mpz_class* src, int src_stride,
               mpz_class* dst, int stride, int src_dim) {
  for (int i = 0; i < src_dim; ++i) {
    for (int j = 0; j < src_dim; ++j) {
      const mpz_class& v = src[i * src_stride + j];
      if (sgn(v) == 0) continue;
      for (const Step& st : steps) {
        const int ti = i + st.i;
        const int tj = j + st.j;
        if (ti < 0 || tj < 0) continue;
        mpz_add(dst[ti * stride + tj].get_mpz_t(), dst[ti * stride + tj].get_mpz_t(),
                v.get_mpz_t());
      }
    }
  }
}

using Monomial = std::tuple<int, int, int>;  // (x, y, z) degrees
using TriPoly = std::map<Monomial, mpz_class>;

void add_term(TriPoly& p, int a, int b, int n, const mpz_class& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = p.try_emplace(Monomial{a, b, n}, c);
  if (!inserted) it->second += c;
}

TriPoly multiply_truncated(const TriPoly& f, const TriPoly& g, int max_z) {
  TriPoly out;
  for (const auto& [mf, cf] : f) {
    for (const auto& [mg, cg] : g) {
      const int n = std::get<2>(mf) + std::get<2>(mg);
      if (n > max_z) continue;
      add_term(out, std::get<0>(mf) + std::get<0>(mg), std::get<1>(mf) + std::get<1>(mg), n,
               cf * cg);
    }
  }
  return out;
}

}  // namespace

const mpz_class& LayerView::at(int i, int j) const {
  if (i < 0 || j < 0 || i > n_ || j > n_) return zero_count();
  return cells_[static_cast<std::size_t>(i) * stride_ + j];
}

CountTable::CountTable(int n_max, std::vector<std::vector<mpz_class>> layers)
    : n_max_(n_max), layers_(std::move(layers)) {}

const mpz_class& CountTable::at(int i, int j, int n) const {
  if (n < 0 || n > n_max_ || i < 0 || j < 0 || i > n || j > n) return zero_count();
  return layers_[n][static_cast<std::size_t>(i) * (n + 1) + j];
}

LayerView CountTable::layer(int n) const {
  if (n < 0 || n > n_max_) throw Error(ErrorKind::OutOfRange, "layer index out of range");
  return LayerView(n, n + 1, layers_[n]);
}

CountTable count(const StepSet& s, int n_max, int cap) {
  check_bounds(n_max, cap);
  const auto steps = s.steps();
  std::vector<std::vector<mpz_class>> layers;
  layers.reserve(static_cast<std::size_t>(n_max) + 1);
  layers.emplace_back(1, mpz_class(1));
  for (int n = 1; n <= n_max; ++n) {
    std::vector<mpz_class> next(static_cast<std::size_t>(n + 1) * (n + 1));
    propagate(steps, layers.back().data(), n, next.data(), n + 1, n);
    layers.push_back(std::move(next));
  }
  return CountTable(n_max, std::move(layers));
}

void for_each_layer(const StepSet& s, int n_max,
                    const std::function<void(const LayerView&)>& visit, int cap) {
  check_bounds(n_max, cap);
  const auto steps = s.steps();
  const int stride = n_max + 1;
  const std::size_t cells = static_cast<std::size_t>(stride) * stride;
  std::vector<mpz_class> a(cells), b(cells);
  a[0] = 1;
  visit(LayerView(0, stride, a));
  for (int n = 1; n <= n_max; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) b[static_cast<std::size_t>(i) * stride + j] = 0;
    }
    propagate(steps, a.data(), stride, b.data(), stride, n);
    std::swap(a, b);
    visit(LayerView(n, stride, a));
  }
}

std::string_view to_string(SeriesLabel label) noexcept {
  switch (label) {
    case SeriesLabel::Q00: return "q00";
    case SeriesLabel::Q10: return "q10";
    case SeriesLabel::Q01: return "q01";
    case SeriesLabel::Q11: return "q11";
  }
  return "q00";
}

std::optional<SeriesLabel> parse_series_label(std::string_view text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (!t.empty() && t.front() == 'q') t.erase(0, 1);
  if (t == "00") return SeriesLabel::Q00;
  if (t == "10") return SeriesLabel::Q10;
  if (t == "01") return SeriesLabel::Q01;
  if (t == "11") return SeriesLabel::Q11;
  return std::nullopt;
}

namespace {

mpz_class layer_sum(const LayerView& layer, SeriesLabel label) {
  const int n = layer.n();
  mpz_class acc = 0;
  switch (label) {
    case SeriesLabel::Q00:
      return layer.at(0, 0);
    case SeriesLabel::Q10:
      for (int i = 0; i <= n; ++i) acc += layer.at(i, 0);
      return acc;
    case SeriesLabel::Q01:
      for (int j = 0; j <= n; ++j) acc += layer.at(0, j);
      return acc;
    case SeriesLabel::Q11:
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) acc += layer.at(i, j);
      }
      return acc;
  }
  return acc;
}

}  // namespace

CoefficientSeries series(const StepSet& /*s*/, const CountTable& table, SeriesLabel label) {
  CoefficientSeries out;
  out.label = label;
  out.coeffs.reserve(static_cast<std::size_t>(table.n_max()) + 1);
  for (int n = 0; n <= table.n_max(); ++n) out.coeffs.push_back(layer_sum(table.layer(n), label));
  return out;
}

const std::vector<mpz_class>& SeriesBundle::get(SeriesLabel label) const {
  switch (label) {
    case SeriesLabel::Q00: return q00;
    case SeriesLabel::Q10: return q10;
    case SeriesLabel::Q01: return q01;
    case SeriesLabel::Q11: return q11;
  }
  return q00;
}

SeriesBundle series_bundle(const StepSet& s, int n_max, int cap) {
  SeriesBundle out;
  for_each_layer(
      s, n_max,
      [&](const LayerView& layer) {
        out.q00.push_back(layer_sum(layer, SeriesLabel::Q00));
        out.q10.push_back(layer_sum(layer, SeriesLabel::Q10));
        out.q01.push_back(layer_sum(layer, SeriesLabel::Q01));
        out.q11.push_back(layer_sum(layer, SeriesLabel::Q11));
      },
      cap);
  return out;
}

FunctionalEquationReport check_functional_equation(const StepSet& s, int degree) {
  if (degree < 1) throw Error(ErrorKind::OutOfRange, "degree must be at least 1");
  const CountTable table = count(s, degree, degree);

  TriPoly q, q_x0, q_0y, q_00;
  for (int n = 0; n <= degree; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const mpz_class& c = table.at(i, j, n);
        add_term(q, i, j, n, c);
        if (j == 0) add_term(q_x0, i, 0, n, c);
        if (i == 0) add_term(q_0y, 0, j, n, c);
        if (i == 0 && j == 0) add_term(q_00, 0, 0, n, c);
      }
    }
  }

  // z*K(x,y,z) = z * sum d_{i,j} x^{i+1} y^{j+1} - x*y
  TriPoly zk;
  for (const Step& st : s.steps()) add_term(zk, st.i + 1, st.j + 1, 1, 1);
  add_term(zk, 1, 1, 0, -1);

  // z*c(x) = z * sum_i d_{i,-1} x^{i+1};  z*c~(y) = z * sum_j d_{-1,j} y^{j+1}
  TriPoly zc, zct, zd;
  for (int i = -1; i <= 1; ++i) add_term(zc, i + 1, 0, 1, s.delta(i, -1));
  for (int j = -1; j <= 1; ++j) add_term(zct, 0, j + 1, 1, s.delta(-1, j));
  add_term(zd, 0, 0, 1, s.delta(-1, -1));

  TriPoly lhs = multiply_truncated(zk, q, degree);
  TriPoly rhs = multiply_truncated(zc, q_x0, degree);
  for (const auto& [m, c] : multiply_truncated(zct, q_0y, degree)) {
    add_term(rhs, std::get<0>(m), std::get<1>(m), std::get<2>(m), c);
  }
  for (const auto& [m, c] : multiply_truncated(zd, q_00, degree)) {
    add_term(rhs, std::get<0>(m), std::get<1>(m), std::get<2>(m), -c);
  }
  add_term(rhs, 1, 1, 0, -1);

  FunctionalEquationReport report;
  report.degree = degree;
  report.has_origin_term = s.delta(-1, -1) != 0;
  std::map<Monomial, std::pair<mpz_class, mpz_class>> merged;
  for (const auto& [m, c] : lhs) merged[m].first = c;
  for (const auto& [m, c] : rhs) merged[m].second = c;
  report.monomials_compared = merged.size();
  for (const auto& [m, pair] : merged) {
    if (pair.first != pair.second) {
      report.first_mismatch = FunctionalEquationMismatch{
          std::get<0>(m), std::get<1>(m), std::get<2>(m), pair.first, pair.second};
      report.holds = false;
      return report;
    }
  }
  report.holds = true;
  return report;
}

mpz_class catalan(int n) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "Catalan index must be non-negative");
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), 2 * static_cast<unsigned long>(n), static_cast<unsigned long>(n));
  return b / (n + 1);
}

}  // namespace qwalk
