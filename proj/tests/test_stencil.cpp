#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bgkpml/model.hpp"
#include "bgkpml/pml.hpp"
#include "bgkpml/stencil.hpp"
#include "bgkpml/time_integrator.hpp"

using namespace bgkpml;

namespace {

Field sample(const GridSpec& g, double (*fn)(double, double)) {
  Field f(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f(i, j) = fn(g.x(i), g.y(j));
  return f;
}

}  // namespace

TEST_CASE("ddx: exactness on polynomials") {
  const GridSpec g{0.0, 0.0, 1.0, 1.0, 16, 12};
  const BoundarySpec walls = BoundarySpec::all_walls();

  SUBCASE("constant maps to zero exactly") {
    Field f = sample(g, [](double, double) { return 3.7; });
    Field d = ddx(f, g, walls);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) CHECK(d(i, j) == 0.0);
  }

  SUBCASE("cubic is exact at every point, including the wall stencils") {
    Field f = sample(g, [](double x, double) { return x * x * x - x; });
    Field d = ddx(f, g, walls);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        CHECK(d(i, j) == doctest::Approx(3 * x * x - 1).epsilon(1e-11));
      }
  }

  SUBCASE("quartic is exact on interior points") {
    Field f = sample(g, [](double x, double) { return x * x * x * x; });
    Field d = ddx(f, g, walls);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 2; i < g.nx - 2; ++i) {
        const double x = g.x(i);
        CHECK(d(i, j) == doctest::Approx(4 * x * x * x).epsilon(1e-10));
      }
  }

  SUBCASE("dimension mismatch rejected") {
    Field f(8, 8);
    Field out(8, 8);
    CHECK_THROWS_AS(ddx(f, g, walls, out), std::invalid_argument);
  }
}

TEST_CASE("ddy mirrors ddx") {
  const GridSpec g{-1.0, -2.0, 2.0, 4.0, 12, 20};
  const BoundarySpec walls = BoundarySpec::all_walls();
  Field f = sample(g, [](double, double y) { return y * y * y; });
  Field d = ddy(f, g, walls);
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y(j);
    CHECK(d(5, j) == doctest::Approx(3 * y * y).epsilon(1e-11));
  }
}

TEST_CASE("ddx: periodic convergence at 4th order") {
  double prev_err = 0.0;
  double slope_min = 10.0;
  int idx = 0;
  for (int n : {32, 64, 128}) {
    GridSpec g;
    g.nx = n;
    g.ny = 9;
    g.Lx = 2.0 * std::numbers::pi * (n - 1.0) / n;  // period n*h = 2 pi
    g.Ly = 1.0;
    const double period = g.hx() * n;
    const double k = 2.0 * std::numbers::pi / period;

    Field f(g.nx, g.ny), d(g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) f(i, j) = std::sin(k * g.x(i));
    ddx(f, g, BoundarySpec::all_periodic(), d);

    double err = 0.0;
    for (int i = 0; i < g.nx; ++i)
      err = std::max(err, std::abs(d(i, 4) - k * std::cos(k * g.x(i))));
    if (idx > 0) {
      const double slope = std::log2(prev_err / err);
      slope_min = std::min(slope_min, slope);
    }
    prev_err = err;
    ++idx;
  }
  CHECK(slope_min >= 3.8);
}

TEST_CASE("wall ghost parity") {
  const GridSpec g{0.0, 0.0, 1.0, 1.0, 10, 10};

  SUBCASE("wall-compatible data extends antisymmetrically") {
    // zero momentum and shear traces at the walls, as in the pulse case
    FieldSet state(12, g.nx, g.ny);
    for (int k = 0; k < 12; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
          state[k](i, j) = std::sin(0.5 + i + 2 * j + k);
    for (int j = 0; j < g.ny; ++j)
      for (int k : {1, 3})
        state[k](0, j) = state[k](g.nx - 1, j) = 0.0;
    for (int i = 0; i < g.nx; ++i)
      for (int k : {2, 3})
        state[k](i, 0) = state[k](i, g.ny - 1) = 0.0;

    apply_wall_bc(state, BoundarySpec::all_walls());

    for (int j = 1; j < g.ny - 1; ++j) {
      CHECK(state[1](-1, j) == -state[1](1, j));   // a2 odd
      CHECK(state[1](-2, j) == -state[1](2, j));
      CHECK(state[1](g.nx, j) == -state[1](g.nx - 2, j));
      CHECK(state[3](-1, j) == -state[3](1, j));   // a4 odd
      CHECK(state[0](-1, j) == state[0](1, j));    // a1 even
      CHECK(state[4](-2, j) == state[4](2, j));    // a5 even
      CHECK(state[6](-1, j) == state[6](0, j));    // auxiliaries extrapolate
      CHECK(state[7](-2, j) == state[7](0, j));
    }
    for (int i = 1; i < g.nx - 1; ++i) {
      CHECK(state[2](i, -1) == -state[2](i, 1));   // a3 odd
      CHECK(state[2](i, g.ny) == -state[2](i, g.ny - 2));
      CHECK(state[3](i, -1) == -state[3](i, 1));   // a4 odd
      CHECK(state[1](i, -1) == state[1](i, 1));    // a2 even
      CHECK(state[8](i, -1) == state[8](i, 0));    // auxiliaries extrapolate
    }
  }

  SUBCASE("nonzero momentum trace reflects about the boundary value") {
    FieldSet state(6, g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) state[1](i, j) = 0.5 + 0.1 * g.x(i);
    apply_wall_bc(state, BoundarySpec::all_walls());
    for (int j = 0; j < g.ny; ++j) {
      CHECK(state[1](-1, j) ==
            doctest::Approx(2.0 * state[1](0, j) - state[1](1, j))
                .epsilon(1e-15));
      CHECK(state[1](g.nx, j) ==
            doctest::Approx(2.0 * state[1](g.nx - 1, j) -
                            state[1](g.nx - 2, j))
                .epsilon(1e-15));
    }
  }
}

TEST_CASE("mass conservation") {
  const ModelConstants consts{1.0, 0.01};

  auto mass = [](const FieldSet& y, const GridSpec& g) {
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double w = ((i == 0 || i == g.nx - 1) ? 0.5 : 1.0) *
                         ((j == 0 || j == g.ny - 1) ? 0.5 : 1.0);
        acc += w * y[0](i, j);
      }
    return acc * g.hx() * g.hy();
  };

  auto gaussian_state = [](const GridSpec& g) {
    FieldSet y(6, g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double r =
            std::hypot(g.x(i) - 0.5 * g.Lx, g.y(j) - 0.5 * g.Ly);
        y[0](i, j) = 1.0 + 0.1 * std::exp(-10.0 * r);
      }
    return y;
  };

  SUBCASE("walls block the flux") {
    const GridSpec g{0.0, 0.0, 1.0, 1.0, 20, 20};
    FieldSet y = gaussian_state(g);
    PlainRhs rhs(g, BoundarySpec::all_walls(), consts);
    const double dt = cfl_dt(g, consts, 0.9);
    Rk4Workspace<FieldSet> ws(y);
    const double m0 = mass(y, g);
    for (int s = 0; s < 100; ++s) rk4_step(y, rhs, s * dt, dt, ws);
    CHECK(std::abs(mass(y, g) - m0) / std::abs(m0) < 1e-6);
  }

  SUBCASE("periodic sums telescope exactly") {
    const GridSpec g{0.0, 0.0, 1.0, 1.0, 20, 20};
    FieldSet y = gaussian_state(g);
    PlainRhs rhs(g, BoundarySpec::all_periodic(), consts, SourceMode::linear);
    const double dt = cfl_dt(g, consts, 0.9);
    Rk4Workspace<FieldSet> ws(y);
    double m0 = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) m0 += y[0](i, j);
    for (int s = 0; s < 100; ++s) rk4_step(y, rhs, s * dt, dt, ws);
    double m1 = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) m1 += y[0](i, j);
    CHECK(std::abs(m1 - m0) / std::abs(m0) < 1e-12);
  }
}
