#include "bgkpml/char_poly.hpp"

#include <cmath>
#include <stdexcept>

namespace bgkpml {

namespace {

const Complex kI(0.0, 1.0);

// (z + alpha0 + i k2 alpha1), the factor both quartics are built around.
ComplexPoly damped_root_factor(double k2, const PmlParams& p, double sigma0) {
  return ComplexPoly::linear(Complex(p.alpha0 + sigma0, k2 * p.alpha1),
                             Complex(1.0, 0.0));
}

}  // namespace

ComplexPoly mu4(double k1, double k2, const PmlParams& p, double sigma1) {
  const double mix = p.alpha1 * p.lambda0 + p.lambda1;
  const ComplexPoly g = damped_root_factor(k2, p, 0.0);

  // (z^2 + k1^2 + k2^2) g^2
  ComplexPoly acc =
      ComplexPoly({Complex(k1 * k1 + k2 * k2), Complex(0.0), Complex(1.0)}) *
      g.pow(2);

  // + 2 g (k2^2 + z (z - i k1 lambda0) + k1 k2 mix) s1
  ComplexPoly inner({Complex(k2 * k2 + k1 * k2 * mix),
                     -kI * (k1 * p.lambda0), Complex(1.0)});
  acc = acc + (g * inner).scaled(Complex(2.0 * sigma1));

  // + (z^2 (1 - l0^2) - 2 i z k2 l0 mix + k2^2 (1 + mix^2)) s1^2
  ComplexPoly tail({Complex(k2 * k2 * (1.0 + mix * mix)),
                    -kI * (2.0 * k2 * p.lambda0 * mix),
                    Complex(1.0 - p.lambda0 * p.lambda0)});
  acc = acc + tail.scaled(Complex(sigma1 * sigma1));
  return acc;
}

ComplexPoly nu4(double k1, double k2, const PmlParams& p, double sigma1) {
  const double mix = p.alpha1 * p.lambda0 + p.lambda1;
  const ComplexPoly g = damped_root_factor(k2, p, 0.0);

  ComplexPoly acc = ComplexPoly({Complex(3.0 * (k1 * k1 + k2 * k2)),
                                 Complex(0.0), Complex(1.0)}) *
                    g.pow(2);

  ComplexPoly inner({Complex(3.0 * k2 * (k2 + k1 * mix)),
                     -kI * (3.0 * k1 * p.lambda0), Complex(1.0)});
  acc = acc + (g * inner).scaled(Complex(2.0 * sigma1));

  ComplexPoly tail({Complex(3.0 * k2 * k2 * (1.0 + mix * mix)),
                    -kI * (6.0 * k2 * p.lambda0 * mix),
                    Complex(1.0 - 3.0 * p.lambda0 * p.lambda0)});
  acc = acc + tail.scaled(Complex(sigma1 * sigma1));
  return acc;
}

std::pair<ComplexPoly, ComplexPoly> mu4_nu4(double k1, double k2,
                                            const PmlParams& p,
                                            double sigma1) {
  return {mu4(k1, k2, p, sigma1), nu4(k1, k2, p, sigma1)};
}

ComplexPoly char_poly_product(double k1, double k2, const PmlParams& p,
                              double sigma1) {
  const ComplexPoly z2({Complex(0.0), Complex(0.0), Complex(1.0)});
  const ComplexPoly theta_factor = ComplexPoly::linear(
      Complex(p.alpha0t, k1 * p.alpha1t), Complex(1.0, 0.0));
  const ComplexPoly omega_factor = damped_root_factor(k2, p, sigma1);
  return z2 * theta_factor.pow(6) * omega_factor.pow(2) *
         mu4(k1, k2, p, sigma1) * nu4(k1, k2, p, sigma1);
}

double c1_closed_form(const PmlParams& p, double sigma1) {
  const double den = p.alpha0 + sigma1;
  if (den == 0.0)
    throw std::domain_error("c1_closed_form: alpha0 = -sigma1");
  return -1.0 / (2.0 * den);
}

C2ClosedForm c2_closed_form(double k1, double k2, const PmlParams& p,
                            double sigma1) {
  const double a0 = p.alpha0;
  if (a0 + sigma1 == 0.0)
    throw std::domain_error("c2_closed_form: alpha0 = -sigma1");
  const double mix2 = 2.0 * p.alpha1 * p.lambda0 + p.lambda1;
  const double l02 = p.lambda0 * p.lambda0;
  const double s = sigma1;

  C2ClosedForm r;
  r.f = std::pow(a0, 4) +
        a0 * (k1 * k1 + 4.0 * a0 * a0 - k1 * k2 * mix2) * s;
  r.denom_full =
      r.f -
      (a0 * a0 * (-6.0 + l02) + k1 * k1 * (-1.0 + l02) + k1 * k2 * mix2) * s * s -
      2.0 * a0 * (-2.0 + l02) * s * s * s -
      (-1.0 + l02) * s * s * s * s;

  const double num = -2.0 * std::pow(a0 + s, 3);
  r.value = num / r.denom_full;
  r.value_small_sigma1 = num / r.f;
  return r;
}

InstabilityScan instability_region_scan(const PmlParams& p, double sigma1,
                                        const KGrid& kg) {
  if (p.alpha0 == 0.0)
    throw std::domain_error("instability_region_scan: alpha0 must be nonzero");

  InstabilityScan scan;
  scan.k = kg.values();
  scan.f.resize(scan.k.size() * scan.k.size());

  const double a0 = p.alpha0;
  const double mix2 = 2.0 * p.alpha1 * p.lambda0 + p.lambda1;

  for (std::size_t i1 = 0; i1 < scan.k.size(); ++i1)
    for (std::size_t i2 = 0; i2 < scan.k.size(); ++i2) {
      const double k1 = scan.k[i1], k2 = scan.k[i2];
      const double f = std::pow(a0, 4) +
                       a0 * (k1 * k1 + 4.0 * a0 * a0 - k1 * k2 * mix2) * sigma1;
      scan.f[i1 * scan.k.size() + i2] = f;
      if (f < 0.0) scan.any_negative = true;
    }

  if (mix2 != 0.0 && sigma1 != 0.0) {
    for (double k1 : scan.k) {
      if (k1 == 0.0) continue;
      const double k2b =
          (std::pow(a0, 3) + (4.0 * a0 * a0 + k1 * k1) * sigma1) /
          (mix2 * k1 * sigma1);
      scan.boundary.emplace_back(k1, k2b);
    }
  }
  return scan;
}

}  // namespace bgkpml
