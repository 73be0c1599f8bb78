#pragma once

// Test-side oracles, kept independent of the library code paths they check.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "bgkpml/polynomial.hpp"
#include "bgkpml/symbol.hpp"

namespace bgkpml::test {

/// Roots of a polynomial via the companion matrix of its monic form.
inline std::vector<Complex> companion_roots(const ComplexPoly& q) {
  const int n = q.degree();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 1; r < n; ++r) m(r, r - 1) = 1.0;
  for (int r = 0; r < n; ++r) m(r, n - 1) = -q.coeff[r] / q.coeff[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<Complex> roots(n);
  for (int r = 0; r < n; ++r) roots[r] = es.eigenvalues()(r);
  return roots;
}

/// Characteristic polynomial det(zI - M) built from the numerically
/// computed spectrum of M (backward-stable Schur eigensolve, then expansion
/// of the product of linear factors). Independent of any factorized form.
inline ComplexPoly char_poly_via_det(const Matrix18c& m) {
  Eigen::ComplexEigenSolver<Matrix18c> es(m, /*computeEigenvectors=*/false);
  std::vector<Complex> roots(18);
  for (int r = 0; r < 18; ++r) roots[r] = es.eigenvalues()(r);
  return ComplexPoly::from_roots(roots);
}

inline double max_coeff_distance(const ComplexPoly& a, const ComplexPoly& b) {
  const std::size_t n = std::max(a.coeff.size(), b.coeff.size());
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex ca = k < a.coeff.size() ? a.coeff[k] : Complex(0.0);
    const Complex cb = k < b.coeff.size() ? b.coeff[k] : Complex(0.0);
    m = std::max(m, std::abs(ca - cb));
  }
  return m;
}

}  // namespace bgkpml::test
