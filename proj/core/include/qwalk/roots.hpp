#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qwalk {

using cdouble = std::complex<double>;

/// Finite roots of sum_k coeffs[k] x^k (ascending). Exact-zero leading
/// coefficients lower the degree; exact-zero trailing coefficients give roots at 0.
/// Companion-matrix eigenvalues, each followed by one Newton polish step.
/// Throws RootFindingFailure if the eigen-solver does not converge or the
/// polynomial is identically zero.
std::vector<cdouble> polynomial_roots(std::span<const double> coeffs);

/// Horner evaluation with ascending coefficients.
cdouble evaluate_polynomial(std::span<const double> coeffs, cdouble x);

}  // namespace qwalk
