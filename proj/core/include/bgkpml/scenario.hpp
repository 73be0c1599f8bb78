#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bgkpml/grid.hpp"
#include "bgkpml/model.hpp"
#include "bgkpml/pml.hpp"
#include "bgkpml/time_integrator.hpp"

namespace bgkpml {

enum class ScenarioCase { gaussian_pulse, isentropic_vortex };

enum class FunctionalKind { g1, g2, g3, h1, h2 };

std::string functional_name(FunctionalKind k);
FunctionalKind functional_from_name(const std::string& name);

struct VortexParams {
  double U0 = 0.5;
  double V0 = 0.0;
  double Umax = 0.25;
  double b = 0.2;
  /// Isentropic exponent of the density profile. Deliberately a separate
  /// knob from the relaxation time even though both are often written with
  /// the same symbol.
  double gamma = 1.4;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Full description of one test case: model constants, physical grid, layer
/// parameters, time span, initial condition and diagnostics placement. The
/// grid covers the physical domain only; the layer and the reference
/// extension are appended to the right of it when a run is planned.
struct ScenarioConfig {
  ModelConstants model;
  GridSpec grid;
  PmlParams pml;
  double pml_L = 0.40;
  double pml_beta = 4.0;
  bool c_auto = true;     // C = 1/dt; otherwise c_value is used
  double c_value = 0.0;
  TimeSpec time;
  ScenarioCase scenario = ScenarioCase::gaussian_pulse;
  double amplitude = 0.05;  // pulse strength p_in - p_out
  double eps = 10.0;        // pulse spatial decay rate
  VortexParams vortex;
  double x_star = std::nan("");  // probe abscissa; NaN = last line before the layer
  double ref_stretch = 2.5;      // reference domain width / physical width
  int snap_stride = 1;           // steps between domain-norm samples

  void validate() const;
};

/// The wave test: unit square, 20 points per direction, layer of thickness
/// 0.40 with exponent 4 at the right boundary, alpha0 = 1 and all other
/// layer parameters zero, T = 1.
ScenarioConfig default_pulse_config();

/// The vortex test on [-1,1]^2: coarse h = 0.1 grid, dt = 0.025, T = 3.5,
/// layer thickness 0.5, probe line at x* = 0.9.
ScenarioConfig default_vortex_config();

ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig scenario_from_json_file(const std::string& path);
/// Resolved configuration as canonical JSON, embedded into every output file.
std::string scenario_to_json(const ScenarioConfig& cfg);

/// Discretization shared by the two runs of a pair.
struct RunPlan {
  GridSpec pml_grid;
  BoundarySpec pml_bc;
  GridSpec ref_grid;
  BoundarySpec ref_bc;
  DampingProfile profile;
  double dt = 0.0;
  int steps = 0;
  double x0 = 0.0;  // layer interface abscissa
  int i_star = 0;   // probe column index (valid on both grids)
  int i_phys = 0;   // last column of the physical domain
};

RunPlan plan_run(const ScenarioConfig& cfg);

/// Initial data sampled on an arbitrary grid (run grids extend the physical
/// one). ncomp is 6 for a plain state or 12 for a layer state; auxiliary
/// fields start at zero.
FieldSet initial_state(const ScenarioConfig& cfg, const GridSpec& grid,
                       int ncomp);
FieldSet init_gaussian(const ScenarioConfig& cfg, const GridSpec& grid,
                       int ncomp);
FieldSet init_vortex(const ScenarioConfig& cfg, const GridSpec& grid,
                     int ncomp);

/// Probe-line and domain slices of the plain reference run, recorded at
/// every step so layer runs can be compared against it. One trajectory can
/// be shared by any number of layer runs with the same base configuration.
struct RefTrajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> a1_line;  // per step, ny values at i_star
  std::vector<std::vector<double>> v_line;
  std::vector<std::vector<double>> a1_dom;   // per recorded step, physical columns
  std::vector<std::vector<double>> v_dom;
  std::vector<int> dom_steps;
  double denom_a1_line = 0.0;
  double denom_a1_dom = 0.0;
  double denom_v_dom = 0.0;
  std::vector<std::pair<int, Field>> a1_full;  // full-field snapshots
  bool failed = false;
  double fail_time = 0.0;
  std::string fail_reason;
};

RefTrajectory run_reference(const ScenarioConfig& cfg,
                            const std::vector<int>& snapshot_steps = {},
                            const IntegrateOptions& opts = {});

struct FieldSnapshot {
  double t = 0.0;
  std::string run;    // "pml" or "ref"
  std::string field;  // "a1", "v", ...
  GridSpec grid;
  Field data;
};

/// Error time series of a layer run against its reference, plus blow-up
/// bookkeeping. A failed run is a recorded outcome, not an exception: sweeps
/// over unstable parameter draws must keep going.
struct RunPairResult {
  std::vector<double> t;
  std::vector<double> err_a1;     // normalized line L2 density error
  std::vector<double> v_sup_err;  // line sup-norm velocity error
  std::vector<double> a1_dom_err; // raw domain L2 at recorded steps
  std::vector<double> v_dom_err;
  std::vector<int> dom_steps;
  double denom_a1_line = 0.0;
  double denom_a1_dom = 0.0;
  double denom_v_dom = 0.0;
  double dt = 0.0;
  int steps = 0;
  bool failed = false;
  double fail_time = 0.0;
  std::string fail_reason;
  std::vector<FieldSnapshot> snapshots;
};

/// Integrates the layer run and compares it step by step against the
/// reference (computed on demand unless a shared trajectory is supplied).
RunPairResult run_pair(const ScenarioConfig& cfg,
                       const RefTrajectory* shared_ref = nullptr,
                       const std::vector<double>& snap_times = {},
                       const IntegrateOptions& opts = {});

/// Layer run without a reference: snapshots only, no error series.
struct SingleRunResult {
  double dt = 0.0;
  int steps = 0;
  bool failed = false;
  double fail_time = 0.0;
  std::string fail_reason;
  std::vector<FieldSnapshot> snapshots;
};
SingleRunResult run_pml_only(const ScenarioConfig& cfg,
                             const std::vector<double>& snap_times = {},
                             const IntegrateOptions& opts = {});

/// err-a1(t) as (t, value) pairs.
std::vector<std::pair<double, double>> err_a1_series(const RunPairResult& r);

/// Scalar error functionals over a completed pair:
///   g1: max over time of err-a1
///   g2: time integral of err-a1
///   g3: time integral of the domain L2 density error, normalized at t=0
///   h1: max over time of the line sup-norm v error
///   h2: time integral of the domain L2 v error, normalized at t=0
double functional_value(const RunPairResult& r, FunctionalKind kind);

}  // namespace bgkpml
