#include <benchmark/benchmark.h>

#include "bgkpml/pml.hpp"
#include "bgkpml/scenario.hpp"
#include "bgkpml/time_integrator.hpp"

using namespace bgkpml;

static void plain_tendency(benchmark::State& state) {
  const ScenarioConfig cfg = default_pulse_config();
  const RunPlan plan = plan_run(cfg);
  FieldSet y = initial_state(cfg, plan.ref_grid, 6);
  FieldSet out(6, plan.ref_grid.nx, plan.ref_grid.ny);
  PlainRhs rhs(plan.ref_grid, plan.ref_bc, cfg.model);
  for (auto _ : state) {
    rhs(0.0, y, out);
    benchmark::DoNotOptimize(out[0](0, 0));
  }
}
BENCHMARK(plain_tendency);

static void layer_tendency(benchmark::State& state) {
  const ScenarioConfig cfg = default_pulse_config();
  const RunPlan plan = plan_run(cfg);
  FieldSet y = initial_state(cfg, plan.pml_grid, 12);
  FieldSet out(12, plan.pml_grid.nx, plan.pml_grid.ny);
  PmlRhs rhs(plan.pml_grid, plan.pml_bc, cfg.model, cfg.pml, plan.profile);
  for (auto _ : state) {
    rhs(0.0, y, out);
    benchmark::DoNotOptimize(out[0](0, 0));
  }
}
BENCHMARK(layer_tendency);

static void rk4_pulse_step(benchmark::State& state) {
  const ScenarioConfig cfg = default_pulse_config();
  const RunPlan plan = plan_run(cfg);
  const FieldSet y0 = initial_state(cfg, plan.pml_grid, 12);
  FieldSet y = y0;
  PmlRhs rhs(plan.pml_grid, plan.pml_bc, cfg.model, cfg.pml, plan.profile);
  Rk4Workspace<FieldSet> ws(y);
  for (auto _ : state) {
    y = y0;  // keep the stepped state in the physical regime
    rk4_step(y, rhs, 0.0, plan.dt, ws);
    benchmark::DoNotOptimize(y[0](0, 0));
  }
}
BENCHMARK(rk4_pulse_step);
