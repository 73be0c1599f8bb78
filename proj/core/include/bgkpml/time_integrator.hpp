#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "bgkpml/grid.hpp"
#include "bgkpml/model.hpp"

namespace bgkpml {

struct TimeSpec {
  double t0 = 0.0;
  double T = 1.0;
  double dt = 0.0;      // 0 means derive from the CFL bound
  double safety = 0.9;  // CFL fraction used when dt is derived
};

/// Stable explicit step for the transport part: dt = safety * hx / (2 sqrt(3 RT)).
double cfl_dt(const GridSpec& grid, const ModelConstants& consts,
              double safety);

struct BlowUpError : std::runtime_error {
  explicit BlowUpError(double time, const std::string& what)
      : std::runtime_error(what), t(time) {}
  double t;
};

template <class State>
struct Rk4Workspace {
  State k1, k2, k3, k4, tmp;
  explicit Rk4Workspace(const State& proto)
      : k1(proto), k2(proto), k3(proto), k4(proto), tmp(proto) {}
};

/// One classical four-stage step; y is advanced in place. The rhs callable
/// must be side-effect free: rhs(t, state, out). Non-finite values in the
/// updated state raise BlowUpError.
template <class State, class Rhs>
void rk4_step(State& y, Rhs&& rhs, double t, double dt,
              Rk4Workspace<State>& ws) {
  rhs(t, y, ws.k1);
  ws.tmp = y;
  ws.tmp.add_scaled(ws.k1, 0.5 * dt);
  rhs(t + 0.5 * dt, ws.tmp, ws.k2);
  ws.tmp = y;
  ws.tmp.add_scaled(ws.k2, 0.5 * dt);
  rhs(t + 0.5 * dt, ws.tmp, ws.k3);
  ws.tmp = y;
  ws.tmp.add_scaled(ws.k3, dt);
  rhs(t + dt, ws.tmp, ws.k4);

  y.add_scaled(ws.k1, dt / 6.0);
  y.add_scaled(ws.k2, dt / 3.0);
  y.add_scaled(ws.k3, dt / 3.0);
  y.add_scaled(ws.k4, dt / 6.0);

  if (!y.finite()) throw BlowUpError(t + dt, "rk4_step: non-finite state");
}

struct IntegrateOptions {
  /// Additional blow-up guard: abort once max|state| exceeds this factor
  /// times max(1, initial max|state|). Catches runaway growth long before
  /// the values overflow to inf.
  double blowup_factor = 1e6;
  int log_every = 0;  // 0 disables progress lines
};

/// Fixed-step drive from t0 to T; the last step is shortened to land exactly
/// on T. The observer runs after every step (and once at t0) with
/// (step_index, t, state). SingularStateError from the rhs is rethrown as
/// BlowUpError carrying the failure time.
template <class State, class Rhs, class Observer>
void integrate(State& y, Rhs&& rhs, const TimeSpec& ts, double dt,
               Observer&& observer, const IntegrateOptions& opts = {}) {
  if (!(dt > 0)) throw std::invalid_argument("integrate: dt must be > 0");
  const double span = ts.T - ts.t0;
  const int steps = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-12)));
  const double guard = opts.blowup_factor * std::max(1.0, y.max_abs());

  Rk4Workspace<State> ws(y);
  observer(0, ts.t0, static_cast<const State&>(y));
  double t = ts.t0;
  for (int m = 1; m <= steps; ++m) {
    const double step_dt = (m == steps) ? (ts.T - t) : dt;
    try {
      rk4_step(y, rhs, t, step_dt, ws);
    } catch (const SingularStateError& e) {
      throw BlowUpError(t + step_dt, e.what());
    }
    t = (m == steps) ? ts.T : ts.t0 + m * dt;
    if (y.max_abs() > guard)
      throw BlowUpError(t, "integrate: amplitude guard tripped");
    observer(m, t, static_cast<const State&>(y));
  }
}

}  // namespace bgkpml
