#include "bgkpml/model.hpp"

#include <cmath>

namespace bgkpml {

std::pair<Matrix6, Matrix6> flux_matrices(const ModelConstants& c) {
  c.validate();
  const double s = std::sqrt(c.RT);
  const double r2 = std::sqrt(2.0);

  Matrix6 a1 = Matrix6::Zero();
  a1(0, 1) = 1;
  a1(1, 0) = 1;
  a1(1, 4) = r2;
  a1(2, 3) = 1;
  a1(3, 2) = 1;
  a1(4, 1) = r2;

  Matrix6 a2 = Matrix6::Zero();
  a2(0, 2) = 1;
  a2(1, 3) = 1;
  a2(2, 0) = 1;
  a2(2, 5) = r2;
  a2(3, 1) = 1;
  a2(5, 2) = r2;

  return {s * a1, s * a2};
}

Matrix6 principal_symbol(double n1, double n2, const ModelConstants& c) {
  auto [a1, a2] = flux_matrices(c);
  return -(n1 * a1 + n2 * a2);
}

std::array<double, 6> principal_symbol_eigenvalues(double n1, double n2,
                                                   const ModelConstants& c) {
  Eigen::SelfAdjointEigenSolver<Matrix6> es(principal_symbol(n1, n2, c),
                                            Eigen::EigenvaluesOnly);
  std::array<double, 6> ev{};
  for (int k = 0; k < 6; ++k) ev[k] = es.eigenvalues()(k);
  return ev;
}

CoeffVector source(const CoeffVector& a, const ModelConstants& c,
                   SourceMode mode) {
  CoeffVector lin{}, nl{};
  source_split(a, c, lin, nl);
  CoeffVector s{};
  if (mode == SourceMode::none) return s;
  for (int k = 0; k < 6; ++k)
    s[k] = lin[k] + (mode == SourceMode::full ? nl[k] : 0.0);
  return s;
}

void source_split(const CoeffVector& a, const ModelConstants& c,
                  CoeffVector& linear, CoeffVector& nonlinear) {
  if (!(a[0] > 0))
    throw SingularStateError("source: density coefficient a1 <= 0");
  const double it = 1.0 / c.tau;
  const double r2 = std::sqrt(2.0);

  linear = {0, 0, 0, -it * a[3], -it * a[4], -it * a[5]};
  nonlinear = {0,
               0,
               0,
               it * a[1] * a[2] / a[0],
               it * a[1] * a[1] / (r2 * a[0]),
               it * a[2] * a[2] / (r2 * a[0])};
}

MacroscopicState coeffs_to_macroscopic(const CoeffVector& a,
                                       const ModelConstants& c) {
  if (!(a[0] > 0))
    throw std::invalid_argument("coeffs_to_macroscopic: a1 must be > 0");
  const double s = std::sqrt(c.RT);
  const double r2 = std::sqrt(2.0);

  MacroscopicState m;
  m.rho = a[0];
  m.u1 = a[1] * s / a[0];
  m.u2 = a[2] * s / a[0];
  m.sigma11 = -c.RT * (r2 * a[4] - a[1] * a[1] / a[0]);
  m.sigma22 = -c.RT * (r2 * a[5] - a[2] * a[2] / a[0]);
  m.sigma12 = -c.RT * (a[3] - a[1] * a[2] / a[0]);
  m.p = c.RT * a[0];
  return m;
}

CoeffVector macroscopic_to_coeffs(const MacroscopicState& m,
                                  const ModelConstants& c) {
  if (!(m.rho > 0))
    throw std::invalid_argument("macroscopic_to_coeffs: rho must be > 0");
  const double s = std::sqrt(c.RT);
  const double h2 = std::sqrt(2.0) / 2.0;

  return {m.rho,
          m.u1 * m.rho / s,
          m.u2 * m.rho / s,
          (m.u1 * m.u2 * m.rho - m.sigma12) / c.RT,
          h2 * (m.u1 * m.u1 * m.rho - m.sigma11) / c.RT,
          h2 * (m.u2 * m.u2 * m.rho - m.sigma22) / c.RT};
}

void ns_limit_closure(const Field& rho, const Field& u1, const Field& u2,
                      const ModelConstants& c, const DerivOp& ddx_op,
                      const DerivOp& ddy_op, Field& a4, Field& a5, Field& a6) {
  const int nx = rho.nx(), ny = rho.ny();
  const double r2 = std::sqrt(2.0);

  Field m1(nx, ny), m2(nx, ny);  // momentum components rho*u
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      m1(i, j) = rho(i, j) * u1(i, j);
      m2(i, j) = rho(i, j) * u2(i, j);
    }

  Field dm2dx(nx, ny), dm1dy(nx, ny), dm1dx(nx, ny), dm2dy(nx, ny);
  ddx_op(m2, dm2dx);
  ddy_op(m1, dm1dy);
  ddx_op(m1, dm1dx);
  ddy_op(m2, dm2dy);

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double r = rho(i, j), v1 = u1(i, j), v2 = u2(i, j);
      a4(i, j) = -c.tau * (dm2dx(i, j) + dm1dy(i, j)) + v1 * v2 * r / c.RT;
      a5(i, j) = -c.tau * r2 * dm1dx(i, j) + v1 * v1 * r / (r2 * c.RT);
      a6(i, j) = -c.tau * r2 * dm2dy(i, j) + v2 * v2 * r / (r2 * c.RT);
    }
}

}  // namespace bgkpml
