#include "bgkpml/pml.hpp"

#include <cmath>
#include <numbers>

#include "bgkpml/stencil.hpp"

namespace bgkpml {

std::vector<std::string> stability_warnings(const PmlParams& p,
                                            double sigma1_min) {
  std::vector<std::string> w;
  if (p.lambda0 != 0.0)
    w.push_back("lambda0 != 0 lies outside the stable parameter region");
  if (p.lambda1 != 0.0)
    w.push_back("lambda1 != 0 lies outside the stable parameter region");
  if (!(p.alpha0 > -sigma1_min))
    w.push_back("alpha0 <= -min(sigma1) violates the decay condition");
  return w;
}

double DampingProfile::value(double x) const {
  if (x <= x0) return 0.0;
  const double xi = (x - x0) / L;
  if (xi >= 1.0) return C;
  return C * std::pow(xi, beta);
}

namespace {

// The six transport equations written out once, shared by both tendencies.
// qx plays the role of the x-flux argument (da/dx1 for the plain system,
// da/dx1 + sigma1 (lambda0 a + w) inside the layer), qy of da/dx2.
inline void transport_rows(double srt, const double* qx, const double* qy,
                           double* da) {
  const double r2 = std::numbers::sqrt2_v<double>;
  da[0] = -srt * (qx[1] + qy[2]);
  da[1] = -srt * (qx[0] + r2 * qx[4] + qy[3]);
  da[2] = -srt * (qx[3] + qy[0] + r2 * qy[5]);
  da[3] = -srt * (qx[2] + qy[1]);
  da[4] = -srt * r2 * qx[1];
  da[5] = -srt * r2 * qy[2];
}

inline void add_source(const double* a, double inv_tau, SourceMode mode,
                       double* da) {
  if (mode == SourceMode::none) return;
  da[3] -= inv_tau * a[3];
  da[4] -= inv_tau * a[4];
  da[5] -= inv_tau * a[5];
  if (mode != SourceMode::full) return;
  if (!(a[0] > 0))
    throw SingularStateError("rhs: density coefficient a1 <= 0");
  const double r2 = std::numbers::sqrt2_v<double>;
  da[3] += inv_tau * a[1] * a[2] / a[0];
  da[4] += inv_tau * a[1] * a[1] / (r2 * a[0]);
  da[5] += inv_tau * a[2] * a[2] / (r2 * a[0]);
}

}  // namespace

PlainRhs::PlainRhs(const GridSpec& grid, const BoundarySpec& bc,
                   const ModelConstants& consts, SourceMode mode)
    : grid_(grid), bc_(bc), consts_(consts), mode_(mode),
      scratch_(6, grid.nx, grid.ny),
      dx_(6, Field(grid.nx, grid.ny)),
      dy_(6, Field(grid.nx, grid.ny)) {
  grid_.validate();
  bc_.validate();
  consts_.validate();
}

void PlainRhs::operator()(double, const FieldSet& y, FieldSet& out) const {
  scratch_ = y;
  apply_wall_bc(scratch_, bc_);
  for (int k = 0; k < 6; ++k) {
    ddx_central(scratch_[k], grid_.hx(), dx_[k]);
    ddy_central(scratch_[k], grid_.hy(), dy_[k]);
  }

  const double srt = std::sqrt(consts_.RT);
  const double inv_tau = 1.0 / consts_.tau;
  double a[6], qx[6], qy[6], da[6];
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) {
      for (int k = 0; k < 6; ++k) {
        a[k] = y[k](i, j);
        qx[k] = dx_[k](i, j);
        qy[k] = dy_[k](i, j);
      }
      transport_rows(srt, qx, qy, da);
      add_source(a, inv_tau, mode_, da);
      for (int k = 0; k < 6; ++k) out[k](i, j) = da[k];
    }
}

PmlRhs::PmlRhs(const GridSpec& grid, const BoundarySpec& bc,
               const ModelConstants& consts, const PmlParams& params,
               const DampingProfile& profile, SourceMode mode)
    : grid_(grid), bc_(bc), consts_(consts), params_(params), mode_(mode),
      sigma_(grid.nx, 0.0),
      scratch_(12, grid.nx, grid.ny),
      dxa_(6, Field(grid.nx, grid.ny)),
      dya_(6, Field(grid.nx, grid.ny)),
      dyw_(6, Field(grid.nx, grid.ny)) {
  grid_.validate();
  bc_.validate();
  consts_.validate();
  profile.validate();
  for (int i = 0; i < grid_.nx; ++i) sigma_[i] = profile.value(grid_.x(i));
}

void PmlRhs::operator()(double, const FieldSet& y, FieldSet& out) const {
  scratch_ = y;
  apply_wall_bc(scratch_, bc_);
  const bool need_dyw = (params_.alpha1 != 0.0);
  for (int k = 0; k < 6; ++k) {
    ddx_central(scratch_[k], grid_.hx(), dxa_[k]);
    ddy_central(scratch_[k], grid_.hy(), dya_[k]);
    if (need_dyw) ddy_central(scratch_[6 + k], grid_.hy(), dyw_[k]);
  }

  const double srt = std::sqrt(consts_.RT);
  const double inv_tau = 1.0 / consts_.tau;
  const double l0 = params_.lambda0, l1 = params_.lambda1;
  const double a0 = params_.alpha0, a1p = params_.alpha1;

  double a[6], w[6], qx[6], qy[6], da[6];
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) {
      const double s1 = sigma_[i];
      const double damp = a0 + s1;
      for (int k = 0; k < 6; ++k) {
        a[k] = y[k](i, j);
        w[k] = y[6 + k](i, j);
        qx[k] = dxa_[k](i, j);
        qy[k] = dya_[k](i, j);
      }
      // Layer coupling enters the flux argument only where sigma1 != 0, so
      // the tendency left of the interface is bitwise the plain one.
      if (s1 != 0.0)
        for (int k = 0; k < 6; ++k) qx[k] += s1 * (l0 * a[k] + w[k]);
      transport_rows(srt, qx, qy, da);
      add_source(a, inv_tau, mode_, da);
      for (int k = 0; k < 6; ++k) out[k](i, j) = da[k];

      for (int k = 0; k < 6; ++k) {
        double dw = -damp * w[k] - dxa_[k](i, j) - l0 * damp * a[k] +
                    l1 * qy[k];
        if (need_dyw) dw -= a1p * dyw_[k](i, j);
        out[6 + k](i, j) = dw;
      }
    }
}

}  // namespace bgkpml
