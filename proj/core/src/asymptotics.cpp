#include "qwalk/asymptotics.hpp"

#include <cmath>
#include <numeric>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr int kMinTerms = 32;

double log_of(const mpz_class& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

// Richardson table for a(k) = A + b1/k + b2/k^2 + ... sampled at k = last - j*h.
// Returns the level-p estimates for p = 0..depth.
std::vector<double> richardson(const std::vector<double>& a, int last, int h, int depth) {
  std::vector<double> levels;
  for (int p = 0; p <= depth; ++p) {
    const int first = last - p * h;
    double acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= p; ++j) {
      const int k = first + j * h;
      const double sign = ((p - j) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom * std::pow(static_cast<double>(k), p) * a[k];
      binom = binom * (p - j) / (j + 1);
    }
    double denom = 1.0;
    for (int j = 2; j <= p; ++j) denom *= j;
    levels.push_back(acc / (denom * std::pow(static_cast<double>(h), p)));
  }
  return levels;
}

double last_gap(const std::vector<double>& levels) {
  return std::abs(levels.back() - levels[levels.size() - 2]);
}

// Smallest lag p in {2, 4, ..., 12} whose log-ratios are smooth near the end of
// the data; oscillations from roots of unity show up as large second differences.
int ratio_period(const std::vector<double>& logs, int last_zero) {
  const int count = static_cast<int>(logs.size());
  std::vector<std::pair<int, double>> rough;
  for (int p = 2; p <= 12; p += 2) {
    const int first = count - 24;
    if (first - p - 2 <= last_zero) break;
    auto g = [&](int k) { return (logs[k] - logs[k - p]) / p; };
    double worst = 0.0;
    for (int k = first; k < count; ++k) {
      worst = std::max(worst, std::abs(g(k) - 2 * g(k - 1) + g(k - 2)));
    }
    rough.emplace_back(p, worst);
  }
  if (rough.empty()) return 2;
  double best = rough.front().second;
  for (const auto& r : rough) best = std::min(best, r.second);
  for (const auto& r : rough) {
    if (r.second <= 10.0 * best + 1e-14) return r.first;
  }
  return 2;
}

}  // namespace

SeriesAnalysis growth_estimate(std::span<const mpz_class> coeffs, int stride) {
  std::vector<int> nonzero;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (sgn(coeffs[n]) != 0) nonzero.push_back(static_cast<int>(n));
  }
  if (nonzero.empty()) throw Error(ErrorKind::ZeroSequence, "all coefficients vanish");
  if (static_cast<int>(nonzero.size()) < kMinTerms) {
    throw Error(ErrorKind::InsufficientData, "fewer than 32 nonzero coefficients");
  }
  if (stride <= 0) {
    stride = 0;
    for (std::size_t t = 1; t < nonzero.size(); ++t) {
      stride = std::gcd(stride, nonzero[t] - nonzero[t - 1]);
    }
    stride = std::max(stride, 1);
  }
  SeriesAnalysis out;
  out.stride = stride;
  out.offset = nonzero.front() % stride;

  // Isolated zeros early in the subsequence (unreachable short lengths) are
  // tolerated as long as the extrapolation window avoids them.
  std::vector<const mpz_class*> terms;
  std::vector<double> logs;
  int last_zero = -1;
  for (std::size_t n = static_cast<std::size_t>(out.offset); n < coeffs.size();
       n += static_cast<std::size_t>(stride)) {
    if (sgn(coeffs[n]) < 0) throw Error(ErrorKind::InsufficientData, "negative coefficient");
    if (sgn(coeffs[n]) == 0) last_zero = static_cast<int>(terms.size());
    terms.push_back(&coeffs[n]);
    logs.push_back(sgn(coeffs[n]) ? log_of(coeffs[n]) : 0.0);
  }
  const int count = static_cast<int>(logs.size());
  if (count < kMinTerms) throw Error(ErrorKind::InsufficientData, "fewer than 32 terms after stride");
  const int last = count - 1;

  const int p = ratio_period(logs, last_zero);
  out.ratio_period = p;
  // Nodes share a residue mod p and span the upper half of the data, which
  // keeps round-off growth in the table small.
  const int h = p * std::max(1, last / (2 * p * kRichardsonDepth));
  out.k_last = last;
  out.k_first = last - kRichardsonDepth * h;
  if (out.k_first < p) throw Error(ErrorKind::InsufficientData, "sequence too short");
  if (out.k_first - p <= last_zero) {
    throw Error(ErrorKind::InsufficientData, "zero coefficient inside the extrapolation window");
  }

  std::vector<double> ratio(static_cast<std::size_t>(count), 0.0);
  for (int k = std::max(p, last_zero + p + 1); k < count; ++k) {
    ratio[k] = mpq_class(*terms[k], *terms[k - p]).get_d();
  }
  const std::vector<double> rho_p = richardson(ratio, last, h, kRichardsonDepth);
  out.rho = std::pow(rho_p.back(), 1.0 / p);
  out.rho_uncertainty = last_gap(rho_p) / (p * std::pow(out.rho, p - 1));
  for (std::size_t l = 1; l < rho_p.size(); ++l) {
    out.diagnostics.push_back(std::abs(rho_p[l] - rho_p[l - 1]));
  }
  const auto& d = out.diagnostics;
  out.converged = d.size() >= 3 && d[d.size() - 1] < d[d.size() - 2] &&
                  d[d.size() - 2] < d[d.size() - 3];
  if (d.back() == 0.0) out.converged = true;

  const double rho_pow = std::pow(out.rho, p);
  std::vector<double> alpha(static_cast<std::size_t>(count), 0.0);
  for (int k = p; k < count; ++k) alpha[k] = k * (ratio[k] / rho_pow - 1.0) / p;
  const std::vector<double> alpha_levels = richardson(alpha, last, h, kRichardsonDepth);
  out.alpha = alpha_levels.back();
  out.alpha_uncertainty = last_gap(alpha_levels);

  const double log_rho = std::log(out.rho);
  std::vector<double> cst(static_cast<std::size_t>(count), 0.0);
  for (int k = 1; k < count; ++k) {
    cst[k] = std::exp(logs[k] - k * log_rho - out.alpha * std::log(static_cast<double>(k)));
  }
  const std::vector<double> const_levels = richardson(cst, last, h, kRichardsonDepth);
  out.const_estimate = const_levels.back();
  out.const_uncertainty = last_gap(const_levels);
  return out;
}

PredictionReport verify_prediction(std::span<const mpz_class> coeffs, double rho0, double alpha0,
                                   double const0, const PredictionTolerances& tol, int stride) {
  PredictionReport r;
  r.analysis = growth_estimate(coeffs, stride);
  const SeriesAnalysis& a = r.analysis;
  r.rho_deviation = std::abs(a.rho - rho0) / std::abs(rho0);
  r.alpha_deviation = std::abs(a.alpha - alpha0);
  r.const_deviation = std::abs(a.const_estimate - const0) / std::abs(const0);
  r.rho_ok = r.rho_deviation <= tol.rho_rel;
  r.alpha_ok = r.alpha_deviation <= tol.alpha_abs;
  r.const_ok = r.const_deviation <= tol.const_rel &&
               a.const_uncertainty <= tol.const_rel * std::abs(const0);
  return r;
}

}  // namespace qwalk
