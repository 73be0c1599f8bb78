#pragma once

#include <string>
#include <vector>

#include "bgkpml/grid.hpp"
#include "bgkpml/model.hpp"

namespace bgkpml {

/// Scalar parameters of the absorbing-layer model. The plain (alpha0 ..
/// lambda1) set belongs to the x-layer; the tilde counterparts enter only
/// the frequency-domain analysis of a y-layer.
struct PmlParams {
  double alpha0 = 1.0;
  double lambda0 = 0.0;
  double alpha1 = 0.0;
  double lambda1 = 0.0;

  double alpha0t = 0.0;
  double lambda0t = 0.0;
  double alpha1t = 0.0;
  double lambda1t = 0.0;
};

/// Warnings for parameter choices outside the analytically safe region
/// (lambda0 = lambda1 = 0, alpha0 > -min sigma1). Sweeps intentionally leave
/// that region, so these are advisory rather than hard errors.
std::vector<std::string> stability_warnings(const PmlParams& p,
                                            double sigma1_min = 0.0);

/// Monomial absorption profile: zero up to x0, then C*((x-x0)/L)^beta,
/// clamped at C past the nominal layer end (the grid may extend a fraction
/// of a cell beyond x0+L after snapping the layer to whole cells).
struct DampingProfile {
  double C = 0.0;
  double x0 = 0.0;
  double L = 0.4;
  double beta = 4.0;

  double value(double x) const;

  void validate() const {
    if (!(C >= 0)) throw std::invalid_argument("DampingProfile: C must be >= 0");
    if (!(L > 0)) throw std::invalid_argument("DampingProfile: L must be > 0");
    if (!(beta >= 0))
      throw std::invalid_argument("DampingProfile: beta must be >= 0");
  }
};

// ---------------------------------------------------------------------------
// Right-hand sides.
//
// State layout: fields 0..5 are the coefficients a1..a6; the layer state
// appends the auxiliary fields w1..w6 as 6..11. The auxiliary fields are
// integrated on the whole domain, not just inside the layer.
// ---------------------------------------------------------------------------

/// Tendency of the plain six-equation system,
///   da/dt = -A1 da/dx1 - A2 da/dx2 + S(a).
class PlainRhs {
 public:
  PlainRhs(const GridSpec& grid, const BoundarySpec& bc,
           const ModelConstants& consts, SourceMode mode = SourceMode::full);

  void operator()(double t, const FieldSet& y, FieldSet& out) const;

  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  BoundarySpec bc_;
  ModelConstants consts_;
  SourceMode mode_;
  mutable FieldSet scratch_;
  mutable std::vector<Field> dx_, dy_;
};

/// Tendency of the layer-augmented system with a single x-direction layer:
///   da/dt = -A1 (da/dx1 + sigma1 (lambda0 a + w)) - A2 da/dx2 + S(a)
///   dw/dt = -alpha1 dw/dx2 - (alpha0+sigma1) w - da/dx1
///           - lambda0 (alpha0+sigma1) a + lambda1 da/dx2
class PmlRhs {
 public:
  PmlRhs(const GridSpec& grid, const BoundarySpec& bc,
         const ModelConstants& consts, const PmlParams& params,
         const DampingProfile& profile, SourceMode mode = SourceMode::full);

  void operator()(double t, const FieldSet& y, FieldSet& out) const;

  /// sigma1 sampled at the grid columns.
  const std::vector<double>& sigma_columns() const { return sigma_; }

 private:
  GridSpec grid_;
  BoundarySpec bc_;
  ModelConstants consts_;
  PmlParams params_;
  SourceMode mode_;
  std::vector<double> sigma_;
  mutable FieldSet scratch_;
  mutable std::vector<Field> dxa_, dya_, dyw_;
};

}  // namespace bgkpml
