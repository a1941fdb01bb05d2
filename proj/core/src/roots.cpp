#include "qwalk/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qwalk/error.hpp"

namespace qwalk {

cdouble evaluate_polynomial(std::span<const double> coeffs, cdouble x) {
  cdouble acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

cdouble evaluate_derivative(std::span<const double> coeffs, cdouble x) {
  cdouble acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

}  // namespace

std::vector<cdouble> polynomial_roots(std::span<const double> coeffs) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == 0.0) --hi;
  if (hi == 0) throw Error(ErrorKind::RootFindingFailure, "zero polynomial has no isolated roots");
  std::size_t lo = 0;
  while (coeffs[lo] == 0.0) ++lo;

  std::vector<cdouble> roots(lo, cdouble(0.0));
  const auto core = coeffs.subspan(lo, hi - lo);
  const int degree = static_cast<int>(core.size()) - 1;
  if (degree == 0) return roots;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  const double lead = core[static_cast<std::size_t>(degree)];
  for (int k = 0; k < degree; ++k) companion(0, k) = -core[static_cast<std::size_t>(degree - 1 - k)] / lead;
  for (int k = 1; k < degree; ++k) companion(k, k - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::RootFindingFailure, "companion eigenvalue iteration did not converge");
  }
  const auto eig = solver.eigenvalues();
  for (int k = 0; k < degree; ++k) {
    cdouble r = eig(k);
    const cdouble f = evaluate_polynomial(core, r);
    const cdouble df = evaluate_derivative(core, r);
    if (std::abs(df) > 0.0) {
      const cdouble polished = r - f / df;
      if (std::isfinite(polished.real()) && std::isfinite(polished.imag()) &&
          std::abs(evaluate_polynomial(core, polished)) < std::abs(f)) {
        r = polished;
      }
    }
    if (r.imag() != 0.0 && std::abs(r.imag()) <= 1e-14 * std::abs(r)) r = cdouble(r.real(), 0.0);
    roots.push_back(r);
  }
  return roots;
}

}  // namespace qwalk
