#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <utility>

#include "bgkpml/grid.hpp"
#include "bgkpml/stencil.hpp"

namespace bgkpml {

/// Gas-constant times temperature and the collision relaxation time.
/// RT fixes the characteristic speeds (sqrt(RT) and sqrt(3 RT)); tau must be
/// small for the weakly compressible regime the closure assumes.
struct ModelConstants {
  double RT = 1.0;
  double tau = 0.01;

  void validate() const {
    if (!(RT > 0)) throw std::invalid_argument("ModelConstants: RT must be > 0");
    if (!(tau > 0))
      throw std::invalid_argument("ModelConstants: tau must be > 0");
  }
};

/// The six Hermite expansion coefficients at one point; a[0] is the density
/// coefficient a1, a[1] and a[2] carry the momenta, a[3..5] the stresses.
using CoeffVector = std::array<double, 6>;

struct MacroscopicState {
  double rho = 1.0;
  double u1 = 0.0, u2 = 0.0;
  double sigma11 = 0.0, sigma22 = 0.0, sigma12 = 0.0;
  double p = 0.0;
};

/// Raised when the nonlinear source is evaluated at a non-positive density
/// coefficient. A negative density means the run went unstable; it must
/// surface instead of being clamped away.
struct SingularStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SourceMode { full, linear, none };

using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// The two real symmetric flux matrices of the six-equation system.
std::pair<Matrix6, Matrix6> flux_matrices(const ModelConstants& c);

/// Principal part P1(n) = -(n1 A1 + n2 A2).
Matrix6 principal_symbol(double n1, double n2, const ModelConstants& c);

/// Eigenvalues of P1(n), ascending. The multiset is
/// {0, 0, +-sqrt(RT)|n|, +-sqrt(3 RT)|n|}.
std::array<double, 6> principal_symbol_eigenvalues(double n1, double n2,
                                                   const ModelConstants& c);

/// Relaxation source S(a). Components 1..3 vanish; components 4..6 relax
/// a4, a5, a6 toward the quadratic equilibrium manifold.
CoeffVector source(const CoeffVector& a, const ModelConstants& c,
                   SourceMode mode = SourceMode::full);

/// Linear / nonlinear split S = S_L + S_NL.
void source_split(const CoeffVector& a, const ModelConstants& c,
                  CoeffVector& linear, CoeffVector& nonlinear);

MacroscopicState coeffs_to_macroscopic(const CoeffVector& a,
                                       const ModelConstants& c);
CoeffVector macroscopic_to_coeffs(const MacroscopicState& m,
                                  const ModelConstants& c);

/// Stress-coefficient closure in the small-tau limit: fills a4, a5, a6 from
/// density and velocity fields. The derivative operators are supplied by the
/// caller so the closure stays independent of the boundary handling.
void ns_limit_closure(const Field& rho, const Field& u1, const Field& u2,
                      const ModelConstants& c, const DerivOp& ddx_op,
                      const DerivOp& ddy_op, Field& a4, Field& a5, Field& a6);

}  // namespace bgkpml
