#include "bgkpml/stencil.hpp"

#include <stdexcept>

namespace bgkpml {

namespace {

// Mirror value for a wall ghost. Even fields copy; odd fields reflect the
// deviation from the boundary trace, 2 f(wall) - f(mirror), which reduces to
// a plain sign flip whenever the trace is zero (the wall-compatible case)
// and stays jump-free when the initial data carries momentum at the wall.
inline double mirror(Parity p, double wall, double inner) {
  return p == Parity::odd ? 2.0 * wall - inner : inner;
}

}  // namespace

void fill_ghosts(Field& f, const BoundarySpec& bc, Parity px, Parity py) {
  const int nx = f.nx(), ny = f.ny();

  if (bc.left == EdgeTag::periodic) {
    for (int j = 0; j < ny; ++j)
      for (int k = 1; k <= Field::halo; ++k) f(-k, j) = f(nx - k, j);
  } else {
    for (int j = 0; j < ny; ++j)
      for (int k = 1; k <= Field::halo; ++k)
        f(-k, j) = mirror(px, f(0, j), f(k, j));
  }
  if (bc.right == EdgeTag::periodic) {
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < Field::halo; ++k) f(nx + k, j) = f(k, j);
  } else {
    for (int j = 0; j < ny; ++j)
      for (int k = 1; k <= Field::halo; ++k)
        f(nx - 1 + k, j) = mirror(px, f(nx - 1, j), f(nx - 1 - k, j));
  }
  if (bc.bottom == EdgeTag::periodic) {
    for (int k = 1; k <= Field::halo; ++k)
      for (int i = 0; i < nx; ++i) f(i, -k) = f(i, ny - k);
  } else {
    for (int k = 1; k <= Field::halo; ++k)
      for (int i = 0; i < nx; ++i) f(i, -k) = mirror(py, f(i, 0), f(i, k));
  }
  if (bc.top == EdgeTag::periodic) {
    for (int k = 0; k < Field::halo; ++k)
      for (int i = 0; i < nx; ++i) f(i, ny + k) = f(i, k);
  } else {
    for (int k = 1; k <= Field::halo; ++k)
      for (int i = 0; i < nx; ++i)
        f(i, ny - 1 + k) = mirror(py, f(i, ny - 1), f(i, ny - 1 - k));
  }
}

Parity wall_parity_x(int component) {
  // Reflection across an x-wall flips the normal momentum a2 and the shear
  // coefficient a4 (the sigma12 moment is odd under mirror symmetry); the
  // reflected state then solves the same system, which keeps strong oblique
  // impacts well behaved.
  return (component == 1 || component == 3) ? Parity::odd : Parity::even;
}

Parity wall_parity_y(int component) {
  // Across a y-wall the transverse momentum a3 and the shear a4 flip.
  return (component == 2 || component == 3) ? Parity::odd : Parity::even;
}

namespace {

// Auxiliary layer fields obey a transport-relaxation equation, not the wave
// system; mirroring them at a wall recycles the outgoing transport back in
// and can pump a corner mode inside the layer. Their ghosts extrapolate the
// boundary value instead.
void fill_ghosts_extrapolate(Field& f, const BoundarySpec& bc) {
  const int nx = f.nx(), ny = f.ny();
  if (bc.left == EdgeTag::periodic) {
    for (int j = 0; j < ny; ++j)
      for (int k = 1; k <= Field::halo; ++k) f(-k, j) = f(nx - k, j);
  } else {
    for (int j = 0; j < ny; ++j)
      for (int k = 1; k <= Field::halo; ++k) f(-k, j) = f(0, j);
  }
  if (bc.right == EdgeTag::periodic) {
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < Field::halo; ++k) f(nx + k, j) = f(k, j);
  } else {
    for (int j = 0; j < ny; ++j)
      for (int k = 1; k <= Field::halo; ++k) f(nx - 1 + k, j) = f(nx - 1, j);
  }
  if (bc.bottom == EdgeTag::periodic) {
    for (int k = 1; k <= Field::halo; ++k)
      for (int i = 0; i < nx; ++i) f(i, -k) = f(i, ny - k);
  } else {
    for (int k = 1; k <= Field::halo; ++k)
      for (int i = 0; i < nx; ++i) f(i, -k) = f(i, 0);
  }
  if (bc.top == EdgeTag::periodic) {
    for (int k = 0; k < Field::halo; ++k)
      for (int i = 0; i < nx; ++i) f(i, ny + k) = f(i, k);
  } else {
    for (int k = 1; k <= Field::halo; ++k)
      for (int i = 0; i < nx; ++i) f(i, ny - 1 + k) = f(i, ny - 1);
  }
}

}  // namespace

void apply_wall_bc(FieldSet& state, const BoundarySpec& bc) {
  for (int k = 0; k < state.count(); ++k) {
    if (k >= 6)
      fill_ghosts_extrapolate(state[k], bc);
    else
      fill_ghosts(state[k], bc, wall_parity_x(k), wall_parity_y(k));
  }
}

namespace {

// All stencils are evaluated in difference form so constant fields map to
// exactly zero. Coefficients are over 12h.
inline double central5(double fm2, double fm1, double fp1, double fp2) {
  return (fm2 - fp2) + 8.0 * (fp1 - fm1);
}

// One-sided at the first point: -25 48 -36 16 -3 over offsets 0..4.
inline double onesided5(double f0, double f1, double f2, double f3,
                        double f4) {
  return 48.0 * (f1 - f0) - 36.0 * (f2 - f0) + 16.0 * (f3 - f0) -
         3.0 * (f4 - f0);
}

// Biased at the second point: -3 -10 18 -6 1 over offsets -1..3.
inline double biased5(double fm1, double f0, double f1, double f2,
                      double f3) {
  return -3.0 * (fm1 - f0) + 18.0 * (f1 - f0) - 6.0 * (f2 - f0) + (f3 - f0);
}

}  // namespace

void ddx_central(const Field& f, double hx, Field& out) {
  const int nx = f.nx(), ny = f.ny();
  const double s = 1.0 / (12.0 * hx);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      out(i, j) =
          s * central5(f(i - 2, j), f(i - 1, j), f(i + 1, j), f(i + 2, j));
}

void ddy_central(const Field& f, double hy, Field& out) {
  const int nx = f.nx(), ny = f.ny();
  const double s = 1.0 / (12.0 * hy);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      out(i, j) =
          s * central5(f(i, j - 2), f(i, j - 1), f(i, j + 1), f(i, j + 2));
}

namespace {

// One 1D line of the self-contained derivative. `get(m)` reads the m-th
// point of the line, `put(m, v)` stores the derivative. Periodic tags come
// in pairs, so the low-edge tag decides the wrap.
template <class Get, class Put>
void deriv_line(int n, double h, EdgeTag lo, Get&& get, Put&& put) {
  const double s = 1.0 / (12.0 * h);
  const bool per = (lo == EdgeTag::periodic);

  auto wrap = [n](int m) { return ((m % n) + n) % n; };

  for (int m = 0; m < n; ++m) {
    double d;
    if (per) {
      d = central5(get(wrap(m - 2)), get(wrap(m - 1)), get(wrap(m + 1)),
                   get(wrap(m + 2)));
    } else if (m == 0) {
      d = onesided5(get(0), get(1), get(2), get(3), get(4));
    } else if (m == 1) {
      d = biased5(get(0), get(1), get(2), get(3), get(4));
    } else if (m == n - 2) {
      d = -biased5(get(n - 1), get(n - 2), get(n - 3), get(n - 4), get(n - 5));
    } else if (m == n - 1) {
      d = -onesided5(get(n - 1), get(n - 2), get(n - 3), get(n - 4),
                     get(n - 5));
    } else {
      d = central5(get(m - 2), get(m - 1), get(m + 1), get(m + 2));
    }
    put(m, s * d);
  }
}

}  // namespace

void ddx(const Field& f, const GridSpec& g, const BoundarySpec& bc,
         Field& out) {
  if (f.nx() != g.nx || f.ny() != g.ny)
    throw std::invalid_argument("ddx: field dimensions do not match grid");
  bc.validate();
  for (int j = 0; j < g.ny; ++j)
    deriv_line(
        g.nx, g.hx(), bc.left, [&](int i) { return f(i, j); },
        [&](int i, double v) { out(i, j) = v; });
}

void ddy(const Field& f, const GridSpec& g, const BoundarySpec& bc,
         Field& out) {
  if (f.nx() != g.nx || f.ny() != g.ny)
    throw std::invalid_argument("ddy: field dimensions do not match grid");
  bc.validate();
  for (int i = 0; i < g.nx; ++i)
    deriv_line(
        g.ny, g.hy(), bc.bottom, [&](int j) { return f(i, j); },
        [&](int j, double v) { out(i, j) = v; });
}

Field ddx(const Field& f, const GridSpec& g, const BoundarySpec& bc) {
  Field out(f.nx(), f.ny());
  ddx(f, g, bc, out);
  return out;
}

Field ddy(const Field& f, const GridSpec& g, const BoundarySpec& bc) {
  Field out(f.nx(), f.ny());
  ddy(f, g, bc, out);
  return out;
}

}  // namespace bgkpml
