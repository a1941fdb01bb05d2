#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "qwalk/step_set.hpp"

namespace qwalk {

/// Largest n_max accepted by the enumerators unless the caller passes a larger cap.
inline constexpr int kDefaultEnumerationCap = 4096;

/// One layer q(., ., n) of the count grid, row-major in i with the given stride.
class LayerView {
 public:
  LayerView(int n, int stride, std::span<const mpz_class> cells)
      : n_(n), stride_(stride), cells_(cells) {}

  int n() const noexcept { return n_; }
  /// q(i, j, n); zero outside [0, n]^2.
  const mpz_class& at(int i, int j) const;

 private:
  int n_;
  int stride_;
  std::span<const mpz_class> cells_;
};

/// Exact counts q(i, j, n) for every n <= n_max, stored layer by layer.
class CountTable {
 public:
  CountTable(int n_max, std::vector<std::vector<mpz_class>> layers);

  int n_max() const noexcept { return n_max_; }
  /// q(i, j, n); zero when any index is outside the reachable grid.
  const mpz_class& at(int i, int j, int n) const;
  LayerView layer(int n) const;

 private:
  int n_max_;
  std::vector<std::vector<mpz_class>> layers_;  // layer n holds (n + 1)^2 cells
};

/// Full count table by the quarter-plane recurrence. Throws OutOfRange for
/// n_max < 0 and ResourceLimit for n_max > cap.
CountTable count(const StepSet& s, int n_max, int cap = kDefaultEnumerationCap);

/// Streams layers 0..n_max through `visit` using two rolling buffers.
void for_each_layer(const StepSet& s, int n_max,
                    const std::function<void(const LayerView&)>& visit,
                    int cap = kDefaultEnumerationCap);

enum class SeriesLabel { Q00, Q10, Q01, Q11 };

std::string_view to_string(SeriesLabel label) noexcept;
/// Accepts "q00", "q10", "q01", "q11" (case-insensitive prefix 'q' optional).
std::optional<SeriesLabel> parse_series_label(std::string_view text);

struct CoefficientSeries {
  SeriesLabel label = SeriesLabel::Q00;
  std::vector<mpz_class> coeffs;
};

/// Specialisation of Q(x, y, z) at x, y in {0, 1}, read off a table.
CoefficientSeries series(const StepSet& s, const CountTable& table, SeriesLabel label);

/// All four specialisations up to n_max without keeping the full table.
struct SeriesBundle {
  std::vector<mpz_class> q00, q10, q01, q11;

  const std::vector<mpz_class>& get(SeriesLabel label) const;
};
SeriesBundle series_bundle(const StepSet& s, int n_max, int cap = kDefaultEnumerationCap);

struct FunctionalEquationMismatch {
  int x_degree = 0;
  int y_degree = 0;
  int z_degree = 0;
  mpz_class lhs;
  mpz_class rhs;
};

struct FunctionalEquationReport {
  int degree = 0;
  bool holds = false;
  std::size_t monomials_compared = 0;
  bool has_origin_term = false;  ///< whether the -d_{-1,-1} Q(0,0,z) term is present
  std::optional<FunctionalEquationMismatch> first_mismatch;
};

/// Checks z*K*Q = z c(x) Q(x,0) + z c~(y) Q(0,y) - z d_{-1,-1} Q(0,0) - xy as a
/// polynomial identity in x, y, z truncated at z-degree `degree`.
FunctionalEquationReport check_functional_equation(const StepSet& s, int degree);

/// Catalan number binomial(2n, n) / (n + 1).
mpz_class catalan(int n);

}  // namespace qwalk
