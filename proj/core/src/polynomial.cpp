#include "bgkpml/polynomial.hpp"

#include <cmath>

namespace bgkpml {

double RealPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeff) m = std::max(m, std::abs(c));
  return m;
}

double RealPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void RealPoly::trim(double tol_abs) {
  while (!coeff.empty() && std::abs(coeff.back()) <= tol_abs)
    coeff.pop_back();
}

ComplexPoly ComplexPoly::from_roots(std::span<const Complex> roots) {
  ComplexPoly p = one();
  for (Complex r : roots) p = p * linear(-r, Complex(1.0, 0.0));
  return p;
}

double ComplexPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeff) m = std::max(m, std::abs(c));
  return m;
}

Complex ComplexPoly::eval(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void ComplexPoly::trim(double tol_abs) {
  while (!coeff.empty() && std::abs(coeff.back()) <= tol_abs)
    coeff.pop_back();
}

ComplexPoly ComplexPoly::operator*(const ComplexPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Complex> c(coeff.size() + o.coeff.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < coeff.size(); ++i)
    for (std::size_t j = 0; j < o.coeff.size(); ++j)
      c[i + j] += coeff[i] * o.coeff[j];
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator+(const ComplexPoly& o) const {
  std::vector<Complex> c(std::max(coeff.size(), o.coeff.size()), Complex(0.0));
  for (std::size_t i = 0; i < coeff.size(); ++i) c[i] += coeff[i];
  for (std::size_t i = 0; i < o.coeff.size(); ++i) c[i] += o.coeff[i];
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::scaled(Complex s) const {
  ComplexPoly p = *this;
  for (Complex& c : p.coeff) c *= s;
  return p;
}

ComplexPoly ComplexPoly::pow(int e) const {
  ComplexPoly acc = one();
  for (int k = 0; k < e; ++k) acc = acc * (*this);
  return acc;
}

}  // namespace bgkpml
