#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bgkpml/model.hpp"
#include "bgkpml/pml.hpp"

namespace bgkpml {

using Complex = std::complex<double>;
using Matrix18c = Eigen::Matrix<Complex, 18, 18>;
using Matrix18d = Eigen::Matrix<double, 18, 18>;

/// Rectangular lattice of Fourier wavenumbers, n x n points over
/// [-kmax, kmax]^2.
struct KGrid {
  double kmax = 10.0;
  int n = 41;

  std::vector<double> values() const {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
      v[i] = (n == 1) ? 0.0 : -kmax + 2.0 * kmax * i / (n - 1);
    return v;
  }
};

/// Frequency-domain operator of the layer-augmented system, in the block
/// order (a, w, theta). Supports both layer directions (sigma2 != 0) and the
/// tilde parameter set even though the time-domain solver only integrates
/// the x-layer system.
Matrix18c assemble_symbol(double k1, double k2, const PmlParams& p,
                          double sigma1, double sigma2,
                          const ModelConstants& c);

/// Real (dissipative) part of the symbol. Every occurrence of k1, k2 in the
/// symbol is purely imaginary, so this matrix does not depend on k; it
/// equals the symbol evaluated at k = 0. alpha1 and its tilde counterpart
/// drop out entirely.
Matrix18d symbol_real_part(const PmlParams& p, double sigma1, double sigma2,
                           const ModelConstants& c);

/// Largest real part over the spectrum of the dissipative part of the
/// symbol. Nonpositive when the decay conditions hold
/// (lambda0, lambda0t > 0, alpha0 > -sigma1, alpha0t > -sigma2 with
/// moderate lambda0 sigma1); positive when they are violated.
double energy_decay_margin(const PmlParams& p, double sigma1, double sigma2,
                           const ModelConstants& c);

/// True when the decay conditions on the parameters hold.
bool energy_decay_conditions(const PmlParams& p, double sigma1, double sigma2);

/// max over the k-grid of max Re eig(symbol). The necessary well-posedness
/// condition requires this to stay bounded; for the stable presets it sits
/// at zero (the transport eigenvalues are imaginary).
double petrovskii_max_re(const PmlParams& p, double sigma1, double sigma2,
                         const ModelConstants& c, const KGrid& kg);

}  // namespace bgkpml
