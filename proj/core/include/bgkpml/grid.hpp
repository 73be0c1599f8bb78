#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bgkpml {

/// Uniform vertex-centered 2D grid: nx points across [x_min, x_min+Lx],
/// so hx = Lx/(nx-1) and the end points sit exactly on the boundary.
struct GridSpec {
  double x_min = 0.0;
  double y_min = 0.0;
  double Lx = 1.0;
  double Ly = 1.0;
  int nx = 20;
  int ny = 20;

  double hx() const { return Lx / (nx - 1); }
  double hy() const { return Ly / (ny - 1); }
  double x(int i) const { return x_min + i * hx(); }
  double y(int j) const { return y_min + j * hy(); }
  double x_max() const { return x_min + Lx; }
  double y_max() const { return y_min + Ly; }

  /// The 4th-order stencils need at least 9 points per direction.
  void validate() const {
    if (nx < 9 || ny < 9)
      throw std::invalid_argument("GridSpec: nx and ny must be >= 9");
    if (Lx <= 0 || Ly <= 0)
      throw std::invalid_argument("GridSpec: Lx and Ly must be positive");
  }

  /// Same spacing and origin, extended by extra_x / extra_y points.
  GridSpec extended(int extra_x, int extra_y = 0) const {
    GridSpec g = *this;
    g.nx += extra_x;
    g.ny += extra_y;
    g.Lx = Lx + extra_x * hx();
    g.Ly = Ly + extra_y * hy();
    return g;
  }
};

enum class EdgeTag { wall, periodic, pml_backed };

/// Per-edge boundary tags. pml_backed marks the edge whose adjacent strip
/// hosts the absorbing layer; the outer rim itself is a wall.
struct BoundarySpec {
  EdgeTag left = EdgeTag::wall;
  EdgeTag right = EdgeTag::wall;
  EdgeTag bottom = EdgeTag::wall;
  EdgeTag top = EdgeTag::wall;

  static BoundarySpec all_walls() { return {}; }
  static BoundarySpec all_periodic() {
    return {EdgeTag::periodic, EdgeTag::periodic, EdgeTag::periodic,
            EdgeTag::periodic};
  }

  void validate() const {
    auto paired = [](EdgeTag a, EdgeTag b) {
      return (a == EdgeTag::periodic) == (b == EdgeTag::periodic);
    };
    if (!paired(left, right) || !paired(bottom, top))
      throw std::invalid_argument(
          "BoundarySpec: periodic tags must come in opposite pairs");
  }
};

/// Scalar field on a GridSpec with a fixed two-cell ghost frame.
/// Interior indices run over i in [0,nx), j in [0,ny); ghost cells extend
/// the range by 2 on every side and are filled by the boundary routines.
class Field {
 public:
  static constexpr int halo = 2;

  Field() = default;
  Field(int nx, int ny)
      : nx_(nx), ny_(ny), stride_(nx + 2 * halo),
        buf_((nx + 2 * halo) * (ny + 2 * halo), 0.0) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }

  double& operator()(int i, int j) {
    return buf_[(j + halo) * stride_ + (i + halo)];
  }
  double operator()(int i, int j) const {
    return buf_[(j + halo) * stride_ + (i + halo)];
  }

  void fill(double v) { buf_.assign(buf_.size(), v); }

  /// this += c * other, over the whole buffer (ghosts included; they are
  /// recomputed before every stencil application so stale values are inert).
  void add_scaled(const Field& other, double c) {
    const std::size_t n = buf_.size();
    for (std::size_t k = 0; k < n; ++k) buf_[k] += c * other.buf_[k];
  }

  double max_abs() const {
    double m = 0.0;
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) m = std::max(m, std::abs((*this)(i, j)));
    return m;
  }

  bool finite() const {
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i)
        if (!std::isfinite((*this)(i, j))) return false;
    return true;
  }

 private:
  int nx_ = 0, ny_ = 0, stride_ = 0;
  std::vector<double> buf_;
};

/// Ordered collection of fields forming one PDE state (6 coefficient fields,
/// optionally followed by 6 auxiliary layer fields).
struct FieldSet {
  std::vector<Field> f;

  FieldSet() = default;
  FieldSet(int count, int nx, int ny) : f(count, Field(nx, ny)) {}

  int count() const { return static_cast<int>(f.size()); }
  Field& operator[](int k) { return f[k]; }
  const Field& operator[](int k) const { return f[k]; }

  void add_scaled(const FieldSet& other, double c) {
    for (std::size_t k = 0; k < f.size(); ++k) f[k].add_scaled(other.f[k], c);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& fld : f) m = std::max(m, fld.max_abs());
    return m;
  }

  bool finite() const {
    for (const auto& fld : f)
      if (!fld.finite()) return false;
    return true;
  }
};

}  // namespace bgkpml
