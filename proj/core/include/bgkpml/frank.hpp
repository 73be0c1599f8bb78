#pragma once

#include <vector>

#include "bgkpml/polynomial.hpp"

namespace bgkpml {

/// One continued-fraction stage: the linear partial quotient c*D + d.
struct CfStep {
  double c = 0.0;
  double d = 0.0;
};

/// Result of the root-sign count via the continued fraction of Q1/Q0.
/// The number of roots of q with positive (negative) real part equals the
/// number of positive (negative) c coefficients; n - n_r roots lie on the
/// imaginary axis. `undefined` is set when a division step degenerates, in
/// which case the counts are not usable (which is itself a verdict: the
/// expansion the stability test needs does not exist at this point).
struct CfExpansion {
  std::vector<CfStep> steps;
  int n = 0;    // degree of the input polynomial
  int n_r = 0;  // realized expansion length
  bool undefined = false;

  int positive_c() const {
    int k = 0;
    for (const auto& s : steps) k += (s.c > 0);
    return k;
  }
  int negative_c() const {
    int k = 0;
    for (const auto& s : steps) k += (s.c < 0);
    return k;
  }
  int on_axis() const { return n - n_r; }
};

/// Continued-fraction expansion of Q1/Q0 where q(iD) = i^n (Q0(D) + i Q1(D)).
/// drop_tol_rel scales the coefficient magnitudes below which a leading
/// coefficient is treated as zero during the polynomial division.
CfExpansion frank_cf(const ComplexPoly& q, double drop_tol_rel = 1e-10);

}  // namespace bgkpml
