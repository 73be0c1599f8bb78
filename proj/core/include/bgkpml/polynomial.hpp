#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bgkpml {

using Complex = std::complex<double>;

/// Dense univariate polynomial with real coefficients, ascending order.
/// An empty coefficient list is the zero polynomial (degree -1).
struct RealPoly {
  std::vector<double> coeff;

  RealPoly() = default;
  explicit RealPoly(std::vector<double> c) : coeff(std::move(c)) {}

  int degree() const { return static_cast<int>(coeff.size()) - 1; }
  bool is_zero() const { return coeff.empty(); }
  double lead() const { return coeff.back(); }
  double max_abs_coeff() const;
  double eval(double x) const;

  /// Drops leading coefficients with magnitude <= tol_abs.
  void trim(double tol_abs);
};

/// Same, with complex coefficients.
struct ComplexPoly {
  std::vector<Complex> coeff;

  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<Complex> c) : coeff(std::move(c)) {}

  static ComplexPoly one() { return ComplexPoly({Complex(1.0, 0.0)}); }
  /// c0 + c1 z
  static ComplexPoly linear(Complex c0, Complex c1) {
    return ComplexPoly({c0, c1});
  }
  static ComplexPoly from_roots(std::span<const Complex> roots);

  int degree() const { return static_cast<int>(coeff.size()) - 1; }
  bool is_zero() const { return coeff.empty(); }
  Complex lead() const { return coeff.back(); }
  double max_abs_coeff() const;
  Complex eval(Complex z) const;
  void trim(double tol_abs);

  ComplexPoly operator*(const ComplexPoly& o) const;
  ComplexPoly operator+(const ComplexPoly& o) const;
  ComplexPoly scaled(Complex s) const;
  ComplexPoly pow(int e) const;
};

}  // namespace bgkpml
