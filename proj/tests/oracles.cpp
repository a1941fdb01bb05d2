#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qwalk::oracle {

namespace {

void walk(const std::vector<Step>& steps, int i, int j, int n, int n_max,
          std::map<std::tuple<int, int, int>, std::uint64_t>& out) {
  ++out[{i, j, n}];
  if (n == n_max) return;
  for (const Step& st : steps) {
    if (i + st.i >= 0 && j + st.j >= 0) walk(steps, i + st.i, j + st.j, n + 1, n_max, out);
  }
}

double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < 200; ++k) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return f(0.5 * (a + b));
}

}  // namespace

std::map<std::tuple<int, int, int>, std::uint64_t> brute_force_counts(const StepSet& s, int n_max) {
  std::map<std::tuple<int, int, int>, std::uint64_t> out;
  walk(s.steps(), 0, 0, 0, n_max, out);
  return out;
}

double partial_sum(const std::vector<mpz_class>& c, double z) {
  double acc = 0.0;
  for (std::size_t n = c.size(); n-- > 0;) acc = acc * z + c[n].get_d();
  return acc;
}

std::complex<double> qx0_series(const CountTable& t, std::complex<double> x, double z) {
  std::complex<double> acc = 0.0;
  double zn = 1.0;
  for (int n = 0; n <= t.n_max(); ++n) {
    std::complex<double> inner = 0.0, xi = 1.0;
    for (int i = 0; i <= n; ++i) {
      inner += t.at(i, 0, n).get_d() * xi;
      xi *= x;
    }
    acc += inner * zn;
    zn *= z;
  }
  return acc;
}

double z_g_golden(const StepSet& s) {
  const auto steps = s.steps();
  auto p = [&](double u, double v) {
    double acc = 0.0;
    for (const Step& st : steps) acc += std::exp(st.i * u + st.j * v);
    return acc;
  };
  auto inner = [&](double v) { return golden_min([&](double u) { return p(u, v); }, -20.0, 20.0); };
  return 1.0 / golden_min(inner, -20.0, 20.0);
}

std::vector<StepSet> interior_census() {
  std::vector<StepSet> out;
  for (const StepSet& s : all_step_sets()) {
    if (s.has_interior_origin()) out.push_back(s);
  }
  return out;
}

std::vector<StepSet> random_interior(std::mt19937_64& rng, int count) {
  std::vector<StepSet> pool = interior_census();
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > static_cast<std::size_t>(count)) pool.erase(pool.begin() + count, pool.end());
  return pool;
}

}  // namespace qwalk::oracle
