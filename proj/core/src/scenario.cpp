#include "bgkpml/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bgkpml/stencil.hpp"

namespace bgkpml {

using nlohmann::json;

std::string functional_name(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::g1: return "g1";
    case FunctionalKind::g2: return "g2";
    case FunctionalKind::g3: return "g3";
    case FunctionalKind::h1: return "h1";
    default: return "h2";
  }
}

FunctionalKind functional_from_name(const std::string& name) {
  if (name == "g1") return FunctionalKind::g1;
  if (name == "g2") return FunctionalKind::g2;
  if (name == "g3") return FunctionalKind::g3;
  if (name == "h1") return FunctionalKind::h1;
  if (name == "h2") return FunctionalKind::h2;
  throw ConfigError("unknown functional: " + name);
}

void ScenarioConfig::validate() const {
  model.validate();
  grid.validate();
  if (!(pml_L > 0)) throw ConfigError("pml.L must be > 0");
  if (!(pml_beta >= 0)) throw ConfigError("pml.beta must be >= 0");
  if (!c_auto && !(c_value > 0))
    throw ConfigError("pml.C must be > 0 when Cmode is explicit");
  if (!(time.T > time.t0)) throw ConfigError("time.T must exceed t0");
  if (time.dt == 0.0 && !(time.safety > 0 && time.safety <= 1.0))
    throw ConfigError("time.safety must lie in (0, 1]");
  if (!(ref_stretch > 1.0)) throw ConfigError("reference.stretch must be > 1");
  if (snap_stride < 1) throw ConfigError("snapshots.stride must be >= 1");
  if (scenario == ScenarioCase::gaussian_pulse && !(amplitude >= 0))
    throw ConfigError("scenario.amplitude must be >= 0");
  if (scenario == ScenarioCase::isentropic_vortex) {
    if (!(vortex.b > 0)) throw ConfigError("scenario.vortex.b must be > 0");
    if (!(vortex.gamma > 1)) throw ConfigError("scenario.vortex.gamma must be > 1");
  }
}

ScenarioConfig default_pulse_config() {
  ScenarioConfig c;
  c.grid = GridSpec{0.0, 0.0, 1.0, 1.0, 20, 20};
  c.pml = PmlParams{};  // alpha0 = 1, everything else zero
  c.pml_L = 0.40;
  c.pml_beta = 4.0;
  c.time = TimeSpec{0.0, 1.0, 0.0, 0.9};
  c.scenario = ScenarioCase::gaussian_pulse;
  return c;
}

ScenarioConfig default_vortex_config() {
  ScenarioConfig c;
  c.grid = GridSpec{-1.0, -1.0, 2.0, 2.0, 21, 21};
  c.pml = PmlParams{};
  c.pml_L = 0.50;
  c.pml_beta = 4.0;
  c.time = TimeSpec{0.0, 3.5, 0.025, 0.9};
  c.scenario = ScenarioCase::isentropic_vortex;
  c.x_star = 0.9;
  return c;
}

// ---------------------------------------------------------------------------
// JSON configuration
// ---------------------------------------------------------------------------

namespace {

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> known) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || (it.key() == k);
    if (!ok) throw ConfigError("unknown key " + where + "." + it.key());
  }
}

double num(const json& j, const std::string& where, const char* key,
           double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ConfigError("key " + where + "." + key + " must be a number");
  return j[key].get<double>();
}

int integer(const json& j, const std::string& where, const char* key,
            int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw ConfigError("key " + where + "." + key + " must be an integer");
  return j[key].get<int>();
}

}  // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(j, "<root>",
                 {"model", "grid", "pml", "time", "scenario", "probe",
                  "reference", "snapshots"});

  // The scenario case picks the defaults everything else overrides.
  ScenarioConfig cfg = default_pulse_config();
  if (j.contains("scenario") && j["scenario"].contains("case")) {
    const std::string c = j["scenario"]["case"].get<std::string>();
    if (c == "gaussian-pulse")
      cfg = default_pulse_config();
    else if (c == "isentropic-vortex")
      cfg = default_vortex_config();
    else
      throw ConfigError("unknown scenario.case: " + c);
  }

  if (j.contains("model")) {
    const json& m = j["model"];
    reject_unknown(m, "model", {"RT", "tau"});
    cfg.model.RT = num(m, "model", "RT", cfg.model.RT);
    cfg.model.tau = num(m, "model", "tau", cfg.model.tau);
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, "grid", {"nx", "ny", "Lx", "Ly", "x_min", "y_min"});
    cfg.grid.nx = integer(g, "grid", "nx", cfg.grid.nx);
    cfg.grid.ny = integer(g, "grid", "ny", cfg.grid.ny);
    cfg.grid.Lx = num(g, "grid", "Lx", cfg.grid.Lx);
    cfg.grid.Ly = num(g, "grid", "Ly", cfg.grid.Ly);
    cfg.grid.x_min = num(g, "grid", "x_min", cfg.grid.x_min);
    cfg.grid.y_min = num(g, "grid", "y_min", cfg.grid.y_min);
  }
  if (j.contains("pml")) {
    const json& p = j["pml"];
    reject_unknown(p, "pml",
                   {"alpha0", "lambda0", "alpha1", "lambda1", "L", "beta",
                    "Cmode", "C"});
    cfg.pml.alpha0 = num(p, "pml", "alpha0", cfg.pml.alpha0);
    cfg.pml.lambda0 = num(p, "pml", "lambda0", cfg.pml.lambda0);
    cfg.pml.alpha1 = num(p, "pml", "alpha1", cfg.pml.alpha1);
    cfg.pml.lambda1 = num(p, "pml", "lambda1", cfg.pml.lambda1);
    cfg.pml_L = num(p, "pml", "L", cfg.pml_L);
    cfg.pml_beta = num(p, "pml", "beta", cfg.pml_beta);
    if (p.contains("Cmode")) {
      const std::string m = p["Cmode"].get<std::string>();
      if (m == "auto")
        cfg.c_auto = true;
      else if (m == "explicit")
        cfg.c_auto = false;
      else
        throw ConfigError("pml.Cmode must be auto or explicit");
    }
    cfg.c_value = num(p, "pml", "C", cfg.c_value);
  }
  if (j.contains("time")) {
    const json& t = j["time"];
    reject_unknown(t, "time", {"T", "safety", "dt", "t0"});
    cfg.time.T = num(t, "time", "T", cfg.time.T);
    cfg.time.safety = num(t, "time", "safety", cfg.time.safety);
    cfg.time.dt = num(t, "time", "dt", cfg.time.dt);
    cfg.time.t0 = num(t, "time", "t0", cfg.time.t0);
  }
  if (j.contains("scenario")) {
    const json& s = j["scenario"];
    reject_unknown(s, "scenario", {"case", "amplitude", "eps", "vortex"});
    cfg.amplitude = num(s, "scenario", "amplitude", cfg.amplitude);
    cfg.eps = num(s, "scenario", "eps", cfg.eps);
    if (s.contains("vortex")) {
      const json& v = s["vortex"];
      reject_unknown(v, "scenario.vortex", {"U0", "V0", "Umax", "b", "gamma"});
      cfg.vortex.U0 = num(v, "scenario.vortex", "U0", cfg.vortex.U0);
      cfg.vortex.V0 = num(v, "scenario.vortex", "V0", cfg.vortex.V0);
      cfg.vortex.Umax = num(v, "scenario.vortex", "Umax", cfg.vortex.Umax);
      cfg.vortex.b = num(v, "scenario.vortex", "b", cfg.vortex.b);
      cfg.vortex.gamma = num(v, "scenario.vortex", "gamma", cfg.vortex.gamma);
    }
  }
  if (j.contains("probe")) {
    const json& p = j["probe"];
    reject_unknown(p, "probe", {"x_star"});
    if (p.contains("x_star") && !p["x_star"].is_null())
      cfg.x_star = num(p, "probe", "x_star", cfg.x_star);
  }
  if (j.contains("reference")) {
    const json& r = j["reference"];
    reject_unknown(r, "reference", {"stretch"});
    cfg.ref_stretch = num(r, "reference", "stretch", cfg.ref_stretch);
  }
  if (j.contains("snapshots")) {
    const json& s = j["snapshots"];
    reject_unknown(s, "snapshots", {"stride"});
    cfg.snap_stride = integer(s, "snapshots", "stride", cfg.snap_stride);
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig scenario_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  json j;
  j["model"] = {{"RT", cfg.model.RT}, {"tau", cfg.model.tau}};
  j["grid"] = {{"nx", cfg.grid.nx},       {"ny", cfg.grid.ny},
               {"Lx", cfg.grid.Lx},       {"Ly", cfg.grid.Ly},
               {"x_min", cfg.grid.x_min}, {"y_min", cfg.grid.y_min}};
  j["pml"] = {{"alpha0", cfg.pml.alpha0},   {"lambda0", cfg.pml.lambda0},
              {"alpha1", cfg.pml.alpha1},   {"lambda1", cfg.pml.lambda1},
              {"L", cfg.pml_L},             {"beta", cfg.pml_beta},
              {"Cmode", cfg.c_auto ? "auto" : "explicit"},
              {"C", cfg.c_value}};
  j["time"] = {{"t0", cfg.time.t0},
               {"T", cfg.time.T},
               {"dt", cfg.time.dt},
               {"safety", cfg.time.safety}};
  j["scenario"] = {
      {"case", cfg.scenario == ScenarioCase::gaussian_pulse
                   ? "gaussian-pulse"
                   : "isentropic-vortex"},
      {"amplitude", cfg.amplitude},
      {"eps", cfg.eps},
      {"vortex",
       {{"U0", cfg.vortex.U0},
        {"V0", cfg.vortex.V0},
        {"Umax", cfg.vortex.Umax},
        {"b", cfg.vortex.b},
        {"gamma", cfg.vortex.gamma}}}};
  if (std::isnan(cfg.x_star))
    j["probe"] = {{"x_star", nullptr}};
  else
    j["probe"] = {{"x_star", cfg.x_star}};
  j["reference"] = {{"stretch", cfg.ref_stretch}};
  j["snapshots"] = {{"stride", cfg.snap_stride}};
  return j.dump();
}

// ---------------------------------------------------------------------------
// Run planning and initial data
// ---------------------------------------------------------------------------

RunPlan plan_run(const ScenarioConfig& cfg) {
  cfg.validate();
  const double hx = cfg.grid.hx();

  RunPlan plan;
  plan.x0 = cfg.grid.x_max();
  plan.i_phys = cfg.grid.nx - 1;

  // Layer and reference extension snapped up to whole cells; the damping
  // profile keeps the nominal thickness.
  const int n_pml = std::max(1, (int)std::ceil(cfg.pml_L / hx - 1e-9));
  plan.pml_grid = cfg.grid.extended(n_pml);
  plan.pml_bc = BoundarySpec::all_walls();
  plan.pml_bc.right = EdgeTag::pml_backed;

  const int n_ref =
      std::max(1, (int)std::ceil((cfg.ref_stretch - 1.0) * cfg.grid.Lx / hx - 1e-9));
  plan.ref_grid = cfg.grid.extended(n_ref);
  plan.ref_bc = BoundarySpec::all_walls();

  plan.dt = cfg.time.dt > 0 ? cfg.time.dt
                            : cfl_dt(cfg.grid, cfg.model, cfg.time.safety);
  plan.steps =
      std::max(1, (int)std::ceil((cfg.time.T - cfg.time.t0) / plan.dt - 1e-12));

  plan.profile.C = cfg.c_auto ? 1.0 / plan.dt : cfg.c_value;
  plan.profile.x0 = plan.x0;
  plan.profile.L = cfg.pml_L;
  plan.profile.beta = cfg.pml_beta;

  if (std::isnan(cfg.x_star)) {
    plan.i_star = cfg.grid.nx - 2;
  } else {
    plan.i_star = (int)std::lround((cfg.x_star - cfg.grid.x_min) / hx);
    if (plan.i_star < 0 || plan.i_star > plan.i_phys ||
        !(cfg.grid.x(plan.i_star) < plan.x0))
      throw ConfigError("probe.x_star must lie strictly left of the layer");
  }
  return plan;
}

FieldSet init_gaussian(const ScenarioConfig& cfg, const GridSpec& grid,
                       int ncomp) {
  FieldSet y(ncomp, grid.nx, grid.ny);
  const double cx = cfg.grid.x_min + 0.5 * cfg.grid.Lx;
  const double cy = cfg.grid.y_min + 0.5 * cfg.grid.Ly;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double r = std::hypot(grid.x(i) - cx, grid.y(j) - cy);
      y[0](i, j) = 1.0 + 2.0 * cfg.amplitude * std::exp(-cfg.eps * r);
    }
  return y;
}

FieldSet init_vortex(const ScenarioConfig& cfg, const GridSpec& grid,
                     int ncomp) {
  FieldSet y(ncomp, grid.nx, grid.ny);
  const double srt = std::sqrt(cfg.model.RT);
  const VortexParams& v = cfg.vortex;
  const double gm1 = v.gamma - 1.0;

  Field rho(grid.nx, grid.ny), u1(grid.nx, grid.ny), u2(grid.nx, grid.ny);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i), yy = grid.y(j);
      const double r = std::hypot(x, yy);
      const double ur =
          v.Umax / v.b * r * std::exp(0.5 * (1.0 - r * r / (v.b * v.b)));
      const double rr =
          std::pow(1.0 - 0.5 * gm1 * v.Umax * v.Umax *
                             std::exp(1.0 - r * r / (v.b * v.b)),
                   1.0 / gm1);
      double su = 0.0, cu = 0.0;  // -sin(theta) u_r, cos(theta) u_r
      if (r > 1e-14) {
        su = -ur * yy / r;
        cu = ur * x / r;
      }
      rho(i, j) = rr;
      u1(i, j) = v.U0 + su;
      u2(i, j) = v.V0 + cu;
    }

  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      y[0](i, j) = rho(i, j);
      y[1](i, j) = u1(i, j) * rho(i, j) / srt;
      y[2](i, j) = u2(i, j) * rho(i, j) / srt;
    }

  const BoundarySpec walls = BoundarySpec::all_walls();
  DerivOp dx = [&](const Field& f, Field& o) { ddx(f, grid, walls, o); };
  DerivOp dy = [&](const Field& f, Field& o) { ddy(f, grid, walls, o); };
  ns_limit_closure(rho, u1, u2, cfg.model, dx, dy, y[3], y[4], y[5]);
  return y;
}

FieldSet initial_state(const ScenarioConfig& cfg, const GridSpec& grid,
                       int ncomp) {
  return cfg.scenario == ScenarioCase::gaussian_pulse
             ? init_gaussian(cfg, grid, ncomp)
             : init_vortex(cfg, grid, ncomp);
}

// ---------------------------------------------------------------------------
// Run drivers
// ---------------------------------------------------------------------------

namespace {

double line_l2(const std::vector<double>& vals, double hy) {
  double acc = 0.0;
  const std::size_t n = vals.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    acc += w * vals[j] * vals[j];
  }
  return std::sqrt(acc * hy);
}

double line_l2_diff(const std::vector<double>& a, const std::vector<double>& b,
                    double hy) {
  double acc = 0.0;
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    const double d = a[j] - b[j];
    acc += w * d * d;
  }
  return std::sqrt(acc * hy);
}

double line_sup_diff(const std::vector<double>& a,
                     const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

// L2 norm over the physical columns [0, i_phys] with trapezoid weights.
double domain_l2(const std::vector<double>& vals, int ni, int nj, double hx,
                 double hy) {
  double acc = 0.0;
  for (int j = 0; j < nj; ++j)
    for (int i = 0; i < ni; ++i) {
      const double w = ((i == 0 || i == ni - 1) ? 0.5 : 1.0) *
                       ((j == 0 || j == nj - 1) ? 0.5 : 1.0);
      const double v = vals[(std::size_t)j * ni + i];
      acc += w * v * v;
    }
  return std::sqrt(acc * hx * hy);
}

double domain_l2_diff(const std::vector<double>& a,
                      const std::vector<double>& b, int ni, int nj, double hx,
                      double hy) {
  double acc = 0.0;
  for (int j = 0; j < nj; ++j)
    for (int i = 0; i < ni; ++i) {
      const double w = ((i == 0 || i == ni - 1) ? 0.5 : 1.0) *
                       ((j == 0 || j == nj - 1) ? 0.5 : 1.0);
      const double d = a[(std::size_t)j * ni + i] - b[(std::size_t)j * ni + i];
      acc += w * d * d;
    }
  return std::sqrt(acc * hx * hy);
}

std::vector<double> extract_line(const FieldSet& y, int comp, int i, int ny) {
  std::vector<double> out(ny);
  for (int j = 0; j < ny; ++j) out[j] = y[comp](i, j);
  return out;
}

std::vector<double> extract_v_line(const FieldSet& y, int i, int ny,
                                   double srt) {
  std::vector<double> out(ny);
  for (int j = 0; j < ny; ++j) out[j] = y[2](i, j) * srt / y[0](i, j);
  return out;
}

std::vector<double> extract_domain(const FieldSet& y, int comp, int ni,
                                   int nj) {
  std::vector<double> out((std::size_t)ni * nj);
  for (int j = 0; j < nj; ++j)
    for (int i = 0; i < ni; ++i) out[(std::size_t)j * ni + i] = y[comp](i, j);
  return out;
}

std::vector<double> extract_v_domain(const FieldSet& y, int ni, int nj,
                                     double srt) {
  std::vector<double> out((std::size_t)ni * nj);
  for (int j = 0; j < nj; ++j)
    for (int i = 0; i < ni; ++i)
      out[(std::size_t)j * ni + i] = y[2](i, j) * srt / y[0](i, j);
  return out;
}

bool record_domain_step(int m, int steps, int stride) {
  return m % stride == 0 || m == steps;
}

std::vector<int> snapshot_steps_for(const std::vector<double>& times,
                                    double t0, double dt, int steps,
                                    double T) {
  std::vector<int> out;
  for (double ts : times) {
    int best = 0;
    double err = std::abs(t0 - ts);
    for (int m = 1; m <= steps; ++m) {
      const double tm = (m == steps) ? T : t0 + m * dt;
      if (std::abs(tm - ts) < err) {
        err = std::abs(tm - ts);
        best = m;
      }
    }
    if (std::find(out.begin(), out.end(), best) == out.end())
      out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RefTrajectory run_reference(const ScenarioConfig& cfg,
                            const std::vector<int>& snapshot_steps,
                            const IntegrateOptions& opts) {
  const RunPlan plan = plan_run(cfg);
  const GridSpec& g = plan.ref_grid;
  const double srt = std::sqrt(cfg.model.RT);
  const int ni = plan.i_phys + 1;

  RefTrajectory ref;
  FieldSet y = initial_state(cfg, g, 6);

  const double denom_line = line_l2(extract_line(y, 0, plan.i_star, g.ny), g.hy());
  if (!(denom_line > 1e-300))
    throw std::domain_error("run_reference: zero initial density line norm");
  ref.denom_a1_line = denom_line;
  ref.denom_a1_dom =
      domain_l2(extract_domain(y, 0, ni, g.ny), ni, g.ny, g.hx(), g.hy());
  ref.denom_v_dom =
      domain_l2(extract_v_domain(y, ni, g.ny, srt), ni, g.ny, g.hx(), g.hy());

  PlainRhs rhs(g, plan.ref_bc, cfg.model);

  auto observer = [&](int m, double t, const FieldSet& s) {
    ref.t.push_back(t);
    ref.a1_line.push_back(extract_line(s, 0, plan.i_star, g.ny));
    ref.v_line.push_back(extract_v_line(s, plan.i_star, g.ny, srt));
    if (record_domain_step(m, plan.steps, cfg.snap_stride)) {
      ref.dom_steps.push_back(m);
      ref.a1_dom.push_back(extract_domain(s, 0, ni, g.ny));
      ref.v_dom.push_back(extract_v_domain(s, ni, g.ny, srt));
    }
    if (std::find(snapshot_steps.begin(), snapshot_steps.end(), m) !=
        snapshot_steps.end()) {
      ref.a1_full.emplace_back(m, s[0]);
    }
    if (opts.log_every > 0 && m % opts.log_every == 0)
      std::clog << "[ref]  step " << m << "  t " << t << "  max|a1| "
                << s[0].max_abs() << "\n";
  };

  try {
    integrate(y, rhs, cfg.time, plan.dt, observer, opts);
  } catch (const BlowUpError& e) {
    ref.failed = true;
    ref.fail_time = e.t;
    ref.fail_reason = e.what();
  }
  return ref;
}

RunPairResult run_pair(const ScenarioConfig& cfg,
                       const RefTrajectory* shared_ref,
                       const std::vector<double>& snap_times,
                       const IntegrateOptions& opts) {
  const RunPlan plan = plan_run(cfg);
  const std::vector<int> snap_steps = snapshot_steps_for(
      snap_times, cfg.time.t0, plan.dt, plan.steps, cfg.time.T);

  RefTrajectory local_ref;
  const RefTrajectory* ref = shared_ref;
  if (!ref) {
    local_ref = run_reference(cfg, snap_steps, opts);
    ref = &local_ref;
  }

  RunPairResult res;
  res.dt = plan.dt;
  res.steps = plan.steps;

  if (ref->failed) {
    res.failed = true;
    res.fail_time = ref->fail_time;
    res.fail_reason = "reference run failed: " + ref->fail_reason;
    return res;
  }
  if (static_cast<int>(ref->t.size()) != plan.steps + 1)
    throw std::invalid_argument(
        "run_pair: shared reference does not match the run plan");

  res.denom_a1_line = ref->denom_a1_line;
  res.denom_a1_dom = ref->denom_a1_dom;
  res.denom_v_dom = ref->denom_v_dom;

  const GridSpec& g = plan.pml_grid;
  const double srt = std::sqrt(cfg.model.RT);
  const int ni = plan.i_phys + 1;

  FieldSet y = initial_state(cfg, g, 12);
  PmlRhs rhs(g, plan.pml_bc, cfg.model, cfg.pml, plan.profile);

  std::size_t dom_cursor = 0;
  auto observer = [&](int m, double t, const FieldSet& s) {
    res.t.push_back(t);
    res.err_a1.push_back(
        line_l2_diff(extract_line(s, 0, plan.i_star, g.ny), ref->a1_line[m],
                     g.hy()) /
        ref->denom_a1_line);
    res.v_sup_err.push_back(line_sup_diff(
        extract_v_line(s, plan.i_star, g.ny, srt), ref->v_line[m]));

    if (record_domain_step(m, plan.steps, cfg.snap_stride)) {
      if (dom_cursor < ref->dom_steps.size() &&
          ref->dom_steps[dom_cursor] == m) {
        res.dom_steps.push_back(m);
        res.a1_dom_err.push_back(
            domain_l2_diff(extract_domain(s, 0, ni, g.ny),
                           ref->a1_dom[dom_cursor], ni, g.ny, g.hx(), g.hy()));
        res.v_dom_err.push_back(
            domain_l2_diff(extract_v_domain(s, ni, g.ny, srt),
                           ref->v_dom[dom_cursor], ni, g.ny, g.hx(), g.hy()));
        ++dom_cursor;
      }
    }

    if (std::find(snap_steps.begin(), snap_steps.end(), m) !=
        snap_steps.end()) {
      res.snapshots.push_back({t, "pml", "a1", g, s[0]});
      for (const auto& [rm, fld] : ref->a1_full)
        if (rm == m)
          res.snapshots.push_back({t, "ref", "a1", plan.ref_grid, fld});
    }

    if (opts.log_every > 0 && m % opts.log_every == 0)
      std::clog << "[pml]  step " << m << "  t " << t << "  max|a1| "
                << s[0].max_abs() << "  err_a1 " << res.err_a1.back() << "\n";
  };

  try {
    integrate(y, rhs, cfg.time, plan.dt, observer, opts);
  } catch (const BlowUpError& e) {
    res.failed = true;
    res.fail_time = e.t;
    res.fail_reason = e.what();
  }
  return res;
}

SingleRunResult run_pml_only(const ScenarioConfig& cfg,
                             const std::vector<double>& snap_times,
                             const IntegrateOptions& opts) {
  const RunPlan plan = plan_run(cfg);
  const std::vector<int> snap_steps = snapshot_steps_for(
      snap_times, cfg.time.t0, plan.dt, plan.steps, cfg.time.T);

  SingleRunResult res;
  res.dt = plan.dt;
  res.steps = plan.steps;

  const GridSpec& g = plan.pml_grid;
  FieldSet y = initial_state(cfg, g, 12);
  PmlRhs rhs(g, plan.pml_bc, cfg.model, cfg.pml, plan.profile);

  auto observer = [&](int m, double t, const FieldSet& s) {
    if (std::find(snap_steps.begin(), snap_steps.end(), m) != snap_steps.end())
      res.snapshots.push_back({t, "pml", "a1", g, s[0]});
    if (opts.log_every > 0 && m % opts.log_every == 0)
      std::clog << "[pml]  step " << m << "  t " << t << "  max|a1| "
                << s[0].max_abs() << "\n";
  };

  try {
    integrate(y, rhs, cfg.time, plan.dt, observer, opts);
  } catch (const BlowUpError& e) {
    res.failed = true;
    res.fail_time = e.t;
    res.fail_reason = e.what();
  }
  return res;
}

std::vector<std::pair<double, double>> err_a1_series(const RunPairResult& r) {
  std::vector<std::pair<double, double>> out;
  out.reserve(r.t.size());
  for (std::size_t m = 0; m < r.t.size(); ++m)
    out.emplace_back(r.t[m], r.err_a1[m]);
  return out;
}

namespace {

double trapz(const std::vector<double>& t, const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t m = 1; m < t.size(); ++m)
    acc += 0.5 * (v[m] + v[m - 1]) * (t[m] - t[m - 1]);
  return acc;
}

}  // namespace

double functional_value(const RunPairResult& r, FunctionalKind kind) {
  if (r.failed)
    throw std::runtime_error("functional on failed run (blow-up at t = " +
                             std::to_string(r.fail_time) + ")");
  switch (kind) {
    case FunctionalKind::g1:
      return *std::max_element(r.err_a1.begin(), r.err_a1.end());
    case FunctionalKind::g2:
      return trapz(r.t, r.err_a1);
    case FunctionalKind::g3: {
      if (r.dom_steps.empty())
        throw std::runtime_error("g3 requires domain snapshots");
      std::vector<double> td;
      for (int m : r.dom_steps) td.push_back(r.t[m]);
      return trapz(td, r.a1_dom_err) / r.denom_a1_dom;
    }
    case FunctionalKind::h1:
      return *std::max_element(r.v_sup_err.begin(), r.v_sup_err.end());
    default: {
      if (r.dom_steps.empty())
        throw std::runtime_error("h2 requires domain snapshots");
      if (!(r.denom_v_dom > 1e-300))
        throw std::runtime_error("h2: zero initial velocity norm");
      std::vector<double> td;
      for (int m : r.dom_steps) td.push_back(r.t[m]);
      return trapz(td, r.v_dom_err) / r.denom_v_dom;
    }
  }
}

}  // namespace bgkpml
