#pragma once

#include <utility>
#include <vector>

#include "bgkpml/pml.hpp"
#include "bgkpml/polynomial.hpp"
#include "bgkpml/symbol.hpp"

namespace bgkpml {

// Characteristic polynomial machinery for the x-layer configuration
// (sigma2 = 0) with unit RT. The characteristic polynomial of the symbol
// factorizes as
//   p(z) = z^2 (z + a0t + i k1 a1t)^6 (z + a0 + s1 + i k2 a1)^2 mu4(z) nu4(z)
// with two quartic factors mu4, nu4 carrying the remaining eight
// eigenvalues. lambda0t and lambda1t never enter p(z).

/// The quartic factor associated with the slow characteristic pair.
ComplexPoly mu4(double k1, double k2, const PmlParams& p, double sigma1);

/// The quartic factor associated with the fast characteristic pair.
ComplexPoly nu4(double k1, double k2, const PmlParams& p, double sigma1);

std::pair<ComplexPoly, ComplexPoly> mu4_nu4(double k1, double k2,
                                            const PmlParams& p,
                                            double sigma1);

/// Full degree-18 product form of the characteristic polynomial.
ComplexPoly char_poly_product(double k1, double k2, const PmlParams& p,
                              double sigma1);

/// First continued-fraction coefficient of mu4: -1 / (2 (alpha0 + sigma1)).
double c1_closed_form(const PmlParams& p, double sigma1);

struct C2ClosedForm {
  double value = 0.0;              // full expression
  double value_small_sigma1 = 0.0; // sigma1 -> 0 truncation
  double denom_full = 0.0;
  double f = 0.0;                  // truncated denominator f(k1, k2)
};

/// Second continued-fraction coefficient of mu4 in closed form, together
/// with the small-sigma1 truncation whose denominator
///   f(k1,k2) = a0^4 + a0 (k1^2 + 4 a0^2 - k1 k2 (2 a1 l0 + l1)) s1
/// controls the instability region. Throws std::domain_error when
/// alpha0 = -sigma1.
C2ClosedForm c2_closed_form(double k1, double k2, const PmlParams& p,
                            double sigma1);

struct InstabilityScan {
  std::vector<double> k;             // axis values, shared by both directions
  std::vector<double> f;             // row-major over (k1, k2)
  std::vector<std::pair<double, double>> boundary;  // (k1, k2) on f = 0
  bool any_negative = false;

  double f_at(int i1, int i2) const {
    return f[static_cast<std::size_t>(i1) * k.size() + i2];
  }
};

/// Sign map of f over the k-grid plus the explicit boundary curve
///   k2(k1) = (a0^3 + (4 a0^2 + k1^2) s1) / ((2 a1 l0 + l1) k1 s1)
/// where defined. Requires alpha0 != 0.
InstabilityScan instability_region_scan(const PmlParams& p, double sigma1,
                                        const KGrid& kg);

}  // namespace bgkpml
