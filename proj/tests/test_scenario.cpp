#include <doctest.h>

#include <cmath>

#include "bgkpml/scenario.hpp"
#include "bgkpml/stencil.hpp"

using namespace bgkpml;

TEST_CASE("run planning for the default pulse case") {
  const ScenarioConfig cfg = default_pulse_config();
  const RunPlan plan = plan_run(cfg);

  CHECK(cfg.grid.hx() == doctest::Approx(1.0 / 19).epsilon(1e-15));
  CHECK(cfg.grid.hx() == doctest::Approx(0.0526).epsilon(1e-2));
  CHECK(plan.x0 == doctest::Approx(1.0));
  CHECK(plan.pml_grid.nx == 28);  // 0.40 / (1/19) = 7.6 -> 8 extra columns
  CHECK(plan.pml_grid.ny == 20);
  CHECK(plan.ref_grid.nx == 49);  // 1.5 / (1/19) = 28.5 -> 29 extra columns
  CHECK(plan.ref_grid.x_max() >= 2.5);
  CHECK(plan.i_star == 18);
  CHECK(plan.dt ==
        doctest::Approx(0.9 / (38.0 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(plan.profile.C == doctest::Approx(1.0 / plan.dt).epsilon(1e-14));
  CHECK(plan.profile.x0 == plan.x0);
  CHECK(plan.pml_bc.right == EdgeTag::pml_backed);

  SUBCASE("explicit probe positions snap to nodes and must precede the layer") {
    ScenarioConfig c2 = cfg;
    c2.x_star = 0.5;
    CHECK(plan_run(c2).i_star == (int)std::lround(0.5 * 19));
    c2.x_star = 1.2;
    CHECK_THROWS_AS(plan_run(c2), ConfigError);
  }
}

TEST_CASE("vortex defaults") {
  const ScenarioConfig cfg = default_vortex_config();
  const RunPlan plan = plan_run(cfg);
  CHECK(cfg.grid.hx() == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(plan.dt == 0.025);
  CHECK(plan.steps == 140);
  CHECK(plan.i_star == 19);
  CHECK(cfg.grid.x(plan.i_star) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(plan.pml_grid.x_max() >= 1.5);
}

TEST_CASE("gaussian initial data") {
  const ScenarioConfig cfg = default_pulse_config();
  const RunPlan plan = plan_run(cfg);
  FieldSet y = init_gaussian(cfg, plan.pml_grid, 12);

  SUBCASE("peak value at the domain center") {
    // center (0.5, 0.5) is not a grid point on an even grid; check the
    // analytic value at the nearest node instead
    const GridSpec& g = plan.pml_grid;
    int ic = (int)std::lround(0.5 / g.hx()), jc = (int)std::lround(0.5 / g.hy());
    const double r =
        std::hypot(g.x(ic) - 0.5, g.y(jc) - 0.5);
    CHECK(y[0](ic, jc) == doctest::Approx(1.0 + 2.0 * cfg.amplitude *
                                                    std::exp(-10.0 * r))
                              .epsilon(1e-14));
  }

  SUBCASE("momenta, stresses and auxiliaries start at zero") {
    for (int k = 1; k < 12; ++k)
      for (int j = 0; j < plan.pml_grid.ny; ++j)
        for (int i = 0; i < plan.pml_grid.nx; ++i)
          CHECK(y[k](i, j) == 0.0);
  }

  SUBCASE("pulse decays strongly before the interface") {
    const GridSpec& g = plan.pml_grid;
    double at_interface = 0.0;
    for (int j = 0; j < g.ny; ++j)
      at_interface = std::max(at_interface,
                              std::abs(y[0](plan.i_phys, j) - 1.0));
    // e^(-10 * 0.5) ~ 6.7e-3 of the 0.1 peak elevation
    CHECK(at_interface < 1e-3);
  }
}

TEST_CASE("vortex initial data") {
  ScenarioConfig cfg = default_vortex_config();
  const RunPlan plan = plan_run(cfg);
  FieldSet y = init_vortex(cfg, plan.pml_grid, 12);
  const GridSpec& g = plan.pml_grid;
  const double srt = std::sqrt(cfg.model.RT);

  auto node = [&](double x, double yy) {
    return std::pair<int, int>{(int)std::lround((x - g.x_min) / g.hx()),
                               (int)std::lround((yy - g.y_min) / g.hy())};
  };

  SUBCASE("radial speed peaks at r = b") {
    auto [i, j] = node(cfg.vortex.b, 0.0);
    const double v = y[2](i, j) * srt / y[0](i, j);
    CHECK(v - cfg.vortex.V0 == doctest::Approx(cfg.vortex.Umax).epsilon(1e-12));
    const double u = y[1](i, j) * srt / y[0](i, j);
    CHECK(u == doctest::Approx(cfg.vortex.U0).epsilon(1e-12));
  }

  SUBCASE("core state") {
    auto [i, j] = node(0.0, 0.0);
    const double gm1 = cfg.vortex.gamma - 1.0;
    const double rho0 = std::pow(
        1.0 - 0.5 * gm1 * cfg.vortex.Umax * cfg.vortex.Umax * std::exp(1.0),
        1.0 / gm1);
    CHECK(y[0](i, j) == doctest::Approx(rho0).epsilon(1e-12));
    CHECK(y[1](i, j) * srt / y[0](i, j) ==
          doctest::Approx(cfg.vortex.U0).epsilon(1e-12));
  }

  SUBCASE("far field approaches the advective background") {
    // the velocity envelope decays like exp(-r^2/(2 b^2)): ~3e-11 at the
    // corner, while the density envelope is already below round-off
    auto [i, j] = node(-1.0, -1.0);
    CHECK(std::abs(y[0](i, j) - 1.0) < 1e-12);
    CHECK(std::abs(y[1](i, j) * srt / y[0](i, j) - cfg.vortex.U0) < 1e-9);
    CHECK(std::abs(y[2](i, j) * srt / y[0](i, j) - cfg.vortex.V0) < 1e-9);
  }
}

TEST_CASE("configuration files") {
  SUBCASE("defaults round-trip through JSON") {
    const ScenarioConfig cfg = default_pulse_config();
    const ScenarioConfig back = scenario_from_json_text(scenario_to_json(cfg));
    CHECK(back.grid.nx == cfg.grid.nx);
    CHECK(back.pml_L == cfg.pml_L);
    CHECK(back.time.T == cfg.time.T);
    CHECK(back.scenario == cfg.scenario);
  }

  SUBCASE("vortex case picks vortex defaults") {
    const auto cfg = scenario_from_json_text(
        R"({"scenario": {"case": "isentropic-vortex"}})");
    CHECK(cfg.grid.x_min == -1.0);
    CHECK(cfg.time.dt == 0.025);
  }

  SUBCASE("unknown keys are named in the diagnostic") {
    try {
      scenario_from_json_text(R"({"grid": {"nx": 20, "spacing": 0.1}})");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("spacing") != std::string::npos);
    }
  }

  SUBCASE("type errors are named") {
    try {
      scenario_from_json_text(R"({"model": {"RT": "one"}})");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("model.RT") != std::string::npos);
    }
  }

  SUBCASE("invalid values rejected") {
    CHECK_THROWS_AS(
        scenario_from_json_text(R"({"time": {"safety": 1.5, "dt": 0.0}})"),
        ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text(R"({"pml": {"L": -0.5}})"),
                    ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text("not json"), ConfigError);
  }
}

TEST_CASE("run pair on a short pulse") {
  ScenarioConfig cfg = default_pulse_config();
  cfg.time.T = 0.3;

  SUBCASE("zero amplitude keeps both runs at rest") {
    ScenarioConfig quiet = cfg;
    quiet.amplitude = 0.0;
    const RunPairResult r = run_pair(quiet);
    REQUIRE(!r.failed);
    for (double e : r.err_a1) CHECK(e == 0.0);
    CHECK(functional_value(r, FunctionalKind::g1) == 0.0);
  }

  SUBCASE("error series starts at zero and the functionals order correctly") {
    const RunPairResult r = run_pair(cfg, nullptr, {0.0, 0.15, 0.3});
    REQUIRE(!r.failed);
    CHECK(r.err_a1.front() == 0.0);
    CHECK((int)r.t.size() == r.steps + 1);

    const double g1 = functional_value(r, FunctionalKind::g1);
    const double g2 = functional_value(r, FunctionalKind::g2);
    const double g3 = functional_value(r, FunctionalKind::g3);
    CHECK(std::isfinite(g1));
    CHECK(std::isfinite(g3));
    for (double e : r.err_a1) CHECK(g1 >= e);
    CHECK(g2 <= cfg.time.T * g1 * (1.0 + 1e-12));

    // three snapshot times, two runs each
    CHECK(r.snapshots.size() == 6);

    const auto series = err_a1_series(r);
    CHECK(series.size() == r.t.size());
    CHECK(series.front().second == 0.0);

    // h2 has no initial transverse velocity to normalize against here
    CHECK_THROWS(functional_value(r, FunctionalKind::h2));
  }

  SUBCASE("shared reference gives identical results") {
    const RefTrajectory ref = run_reference(cfg);
    const RunPairResult a = run_pair(cfg);
    const RunPairResult b = run_pair(cfg, &ref);
    REQUIRE(!a.failed);
    REQUIRE(!b.failed);
    REQUIRE(a.err_a1.size() == b.err_a1.size());
    for (std::size_t m = 0; m < a.err_a1.size(); ++m)
      CHECK(a.err_a1[m] == b.err_a1[m]);
  }

  SUBCASE("mismatched shared reference is rejected") {
    ScenarioConfig other = cfg;
    other.time.T = 0.2;
    const RefTrajectory ref = run_reference(other);
    CHECK_THROWS_AS(run_pair(cfg, &ref), std::invalid_argument);
  }
}

TEST_CASE("reference domain independence") {
  // The far boundary must stay causally invisible at the probe line, so a
  // wider reference changes g1 by well under a percent.
  ScenarioConfig cfg = default_pulse_config();
  const RunPairResult base = run_pair(cfg);
  REQUIRE(!base.failed);

  ScenarioConfig wide = cfg;
  wide.ref_stretch = 3.0;
  const RunPairResult wider = run_pair(wide);
  REQUIRE(!wider.failed);

  const double a = functional_value(base, FunctionalKind::g1);
  const double b = functional_value(wider, FunctionalKind::g1);
  CHECK(std::abs(a - b) < 0.01 * std::max(a, b));
}

TEST_CASE("vortex symmetry while inside the physical domain") {
  ScenarioConfig cfg = default_vortex_config();
  cfg.time.T = 0.4;  // center advects to x = 0.2, exactly two cells
  const RunPlan plan = plan_run(cfg);

  FieldSet y = initial_state(cfg, plan.pml_grid, 12);
  PmlRhs rhs(plan.pml_grid, plan.pml_bc, cfg.model, cfg.pml, plan.profile);
  integrate(y, rhs, cfg.time, plan.dt, [](int, double, const FieldSet&) {});

  const GridSpec& g = plan.pml_grid;
  const double srt = std::sqrt(cfg.model.RT);
  const int ic = (int)std::lround((0.2 - g.x_min) / g.hx());

  double vmax = 0.0, asym = 0.0;
  for (int off = 1; off <= 5; ++off)
    for (int j = 2; j < g.ny - 2; ++j) {
      const double vr = y[2](ic + off, j) * srt / y[0](ic + off, j);
      const double vl = y[2](ic - off, j) * srt / y[0](ic - off, j);
      vmax = std::max(vmax, std::abs(vr));
      asym = std::max(asym, std::abs(vr + vl));
    }
  CHECK(vmax > 0.05);  // the vortex is actually there
  // The residual asymmetry (~6%, grid independent) is the compressible
  // adjustment of the advecting Euler profile under the kinetic dynamics,
  // not discretization noise; the contour-level symmetry survives it.
  CHECK(asym < 0.10 * vmax);
}

TEST_CASE("single run without a reference") {
  ScenarioConfig cfg = default_pulse_config();
  cfg.time.T = 0.2;
  const SingleRunResult r = run_pml_only(cfg, {0.0, 0.2});
  CHECK(!r.failed);
  CHECK(r.snapshots.size() == 2);
  for (const auto& s : r.snapshots) CHECK(s.run == "pml");
}
