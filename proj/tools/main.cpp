// Command line driver: time-domain simulations, frequency-domain stability
// reports and ANOVA sensitivity studies.
//
// Exit codes: 0 success, 2 configuration error, 3 blow-up, 4 poisoned nodes.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "bgkpml/char_poly.hpp"
#include "bgkpml/frank.hpp"
#include "bgkpml/io.hpp"
#include "bgkpml/scenario.hpp"
#include "bgkpml/study.hpp"
#include "bgkpml/symbol.hpp"

using namespace bgkpml;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitPoisoned = 4;

std::vector<double> parse_times(const std::string& csv) {
  std::vector<double> out;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

std::string snapshot_filename(const FieldSnapshot& s) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "snap_%s_%s_t%.6f.csv", s.field.c_str(),
                s.run.c_str(), s.t);
  return buf;
}

void print_warnings(const ScenarioConfig& cfg) {
  for (const auto& w : stability_warnings(cfg.pml))
    std::cerr << "warning: " << w << "\n";
}

// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 bool no_reference, const std::string& snap_times_csv,
                 int log_every) {
  ScenarioConfig cfg = config_path.empty()
                           ? default_pulse_config()
                           : scenario_from_json_file(config_path);
  print_warnings(cfg);
  fs::create_directories(out_dir);
  const std::string provenance = scenario_to_json(cfg);
  const std::vector<double> snap_times = parse_times(snap_times_csv);

  IntegrateOptions opts;
  opts.log_every = log_every;

  json summary;
  summary["config"] = json::parse(provenance);
  const RunPlan plan = plan_run(cfg);
  summary["dt"] = plan.dt;
  summary["steps"] = plan.steps;
  summary["C"] = plan.profile.C;
  summary["x_star"] = cfg.grid.x(plan.i_star);

  int exit_code = 0;
  if (no_reference) {
    const SingleRunResult run = run_pml_only(cfg, snap_times, opts);
    summary["blow_up"] = run.failed;
    if (run.failed) {
      summary["blow_up_time"] = run.fail_time;
      summary["blow_up_reason"] = run.fail_reason;
      exit_code = kExitBlowUp;
    }
    for (const auto& s : run.snapshots)
      write_field_csv((fs::path(out_dir) / snapshot_filename(s)).string(),
                      s.data, s.grid, {{"config", provenance}});
  } else {
    const RunPairResult pair = run_pair(cfg, nullptr, snap_times, opts);
    summary["blow_up"] = pair.failed;
    if (pair.failed) {
      summary["blow_up_time"] = pair.fail_time;
      summary["blow_up_reason"] = pair.fail_reason;
      exit_code = kExitBlowUp;
    } else {
      write_probe_csv((fs::path(out_dir) / "probe.csv").string(), pair,
                      provenance);
      json fn;
      fn["g1"] = functional_value(pair, FunctionalKind::g1);
      fn["g2"] = functional_value(pair, FunctionalKind::g2);
      fn["g3"] = functional_value(pair, FunctionalKind::g3);
      try {
        fn["h1"] = functional_value(pair, FunctionalKind::h1);
        fn["h2"] = functional_value(pair, FunctionalKind::h2);
      } catch (const std::exception&) {
        // h2 is undefined when the initial transverse velocity vanishes
      }
      summary["functionals"] = fn;
    }
    for (const auto& s : pair.snapshots)
      write_field_csv((fs::path(out_dir) / snapshot_filename(s)).string(),
                      s.data, s.grid, {{"config", provenance}});
  }

  write_text_file((fs::path(out_dir) / "summary.json").string(),
                  summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return exit_code;
}

// ---------------------------------------------------------------------------

int cmd_stability(const PmlParams& params, double sigma1, double sigma2,
                  double rt, double kmax, int knum, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const ModelConstants consts{rt, 0.01};
  const KGrid kg{kmax, knum};

  json report;
  report["params"] = {{"alpha0", params.alpha0},   {"lambda0", params.lambda0},
                      {"alpha1", params.alpha1},   {"lambda1", params.lambda1},
                      {"alpha0t", params.alpha0t}, {"lambda0t", params.lambda0t},
                      {"alpha1t", params.alpha1t}, {"lambda1t", params.lambda1t},
                      {"sigma1", sigma1},          {"sigma2", sigma2},
                      {"RT", rt}};
  const std::string provenance = report["params"].dump();

  report["energy_decay_margin"] = energy_decay_margin(params, sigma1, sigma2, consts);
  report["decay_conditions_hold"] = energy_decay_conditions(params, sigma1, sigma2);
  report["petrovskii_max_re"] = petrovskii_max_re(params, sigma1, sigma2, consts, kg);
  report["warnings"] = stability_warnings(params, 0.0);

  try {
    report["c1"] = c1_closed_form(params, sigma1);
    const auto c2 = c2_closed_form(1.0, 1.0, params, sigma1);
    report["c2_at_k_1_1"] = c2.value;
    report["c2_small_sigma1_at_k_1_1"] = c2.value_small_sigma1;
  } catch (const std::domain_error& e) {
    report["c1"] = nullptr;
    report["c2_error"] = e.what();
  }

  // Frank sign counts for both quartics on a coarse subsample of the grid.
  json counts = json::array();
  int undefined_points = 0;
  const auto ks = KGrid{kmax, 5}.values();
  for (double k1 : ks)
    for (double k2 : ks) {
      const auto cf_mu = frank_cf(mu4(k1, k2, params, sigma1));
      const auto cf_nu = frank_cf(nu4(k1, k2, params, sigma1));
      undefined_points += (cf_mu.undefined || cf_nu.undefined);
      counts.push_back({{"k1", k1},
                        {"k2", k2},
                        {"mu4_pos", cf_mu.positive_c()},
                        {"mu4_neg", cf_mu.negative_c()},
                        {"mu4_axis", cf_mu.on_axis()},
                        {"mu4_undefined", cf_mu.undefined},
                        {"nu4_pos", cf_nu.positive_c()},
                        {"nu4_neg", cf_nu.negative_c()},
                        {"nu4_axis", cf_nu.on_axis()},
                        {"nu4_undefined", cf_nu.undefined}});
    }
  report["frank_counts"] = counts;
  report["frank_undefined_points"] = undefined_points;

  if (params.alpha0 != 0.0) {
    const auto scan = instability_region_scan(params, sigma1, kg);
    report["instability_region_nonempty"] = scan.any_negative;
    write_fsign_csv((fs::path(out_dir) / "fsign_map.csv").string(), scan,
                    provenance);
  } else {
    report["instability_region_nonempty"] = nullptr;
  }

  write_text_file((fs::path(out_dir) / "stability_report.json").string(),
                  report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

ParameterBox parse_sweep(const std::string& sweep) {
  // "alpha0=0:3.5,beta=0:4,L=0.25:0.8"
  ParameterBox box;
  std::istringstream is(sweep);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    const auto colon = tok.find(':', eq);
    if (eq == std::string::npos || colon == std::string::npos)
      throw ConfigError("bad sweep entry: " + tok);
    box.dims.push_back({tok.substr(0, eq),
                        std::stod(tok.substr(eq + 1, colon - eq - 1)),
                        std::stod(tok.substr(colon + 1))});
  }
  return box;
}

std::map<std::string, double> parse_freeze(const std::string& freeze) {
  std::map<std::string, double> out;
  std::istringstream is(freeze);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ConfigError("bad freeze entry: " + tok);
    out[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
  }
  return out;
}

int cmd_anova(const std::string& config_path, const std::string& scase,
              const std::string& functional, const std::string& sweep,
              const std::string& nodes_csv, const std::string& freeze,
              const std::string& out_dir, int workers, bool resume,
              const std::string& oracle) {
  ScenarioConfig base;
  if (!config_path.empty())
    base = scenario_from_json_file(config_path);
  else if (scase == "vortex")
    base = default_vortex_config();
  else
    base = default_pulse_config();

  StudySpec spec;
  spec.kind = functional_from_name(functional);
  spec.base = base;
  spec.box = parse_sweep(sweep);
  spec.frozen = parse_freeze(freeze);

  fs::create_directories(out_dir);
  const std::string provenance = scenario_to_json(base);

  std::vector<std::string> names;
  for (const auto& d : spec.box.dims) names.push_back(d.name);

  std::vector<TsiRow> rows;
  std::vector<std::size_t> poisoned;
  std::string poisoned_rule;

  std::vector<int> node_counts;
  {
    std::istringstream is(nodes_csv);
    std::string tok;
    while (std::getline(is, tok, ','))
      if (!tok.empty()) node_counts.push_back(std::stoi(tok));
  }
  if (node_counts.empty()) node_counts = {2};

  for (int n : node_counts) {
    spec.nodes = n;
    const std::string cache =
        (fs::path(out_dir) /
         ("eval_cache_" + functional + "_n" + std::to_string(n) + ".csv"))
            .string();
    try {
      const StudyResult r =
          oracle.empty() ? run_study(spec, workers, cache, resume)
                         : run_study_with_oracle(spec, oracle, workers);
      rows.push_back({r.dec.rule.label(), r.tsi});
      write_decomposition_json(
          (fs::path(out_dir) / ("decomposition_" + functional + "_n" +
                                std::to_string(n) + ".json"))
              .string(),
          r, provenance);
    } catch (const PoisonedNodesError& e) {
      poisoned = e.nodes;
      poisoned_rule = "(G" + std::to_string(n) + ")";
      break;
    }
  }

  if (!poisoned.empty()) {
    std::cerr << "poisoned nodes in " << poisoned_rule << " sweep:";
    CubatureRule rule = CubatureRule::make(spec.nodes, spec.box.p());
    for (std::size_t idx : poisoned) {
      std::vector<int> mi(spec.box.p());
      std::vector<double> unit(spec.box.p());
      rule.decode(idx, mi.data());
      rule.unit_point(mi.data(), unit.data());
      const auto phys = spec.box.to_physical(unit);
      std::cerr << "\n  node " << idx << ":";
      for (int d = 0; d < spec.box.p(); ++d)
        std::cerr << " " << names[d] << " = " << phys[d];
    }
    std::cerr << "\n";
    return kExitPoisoned;
  }

  const std::string table_path =
      (fs::path(out_dir) / ("tsi_" + functional + ".csv")).string();
  write_tsi_csv(table_path, names, rows, provenance);

  std::cout << "cubature";
  for (const auto& n : names) std::cout << "," << n;
  std::cout << "\n";
  for (const auto& row : rows) {
    std::cout << row.rule_label;
    for (double v : row.values) std::cout << "," << format_double(v);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic relaxation model with an absorbing layer: "
               "simulation, stability analysis and parameter sensitivity"};
  app.require_subcommand(1);

  // simulate ----------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "integrate a test case");
  std::string sim_config, sim_out = ".", sim_snaps;
  bool sim_noref = false;
  int sim_log = 0;
  sim->add_option("--config", sim_config, "scenario JSON file");
  sim->add_option("--out", sim_out, "output directory");
  sim->add_option("--snap-times", sim_snaps, "comma separated snapshot times");
  sim->add_flag("--no-reference", sim_noref, "skip the reference run");
  sim->add_option("--log-every", sim_log, "progress line stride (0 = quiet)");

  // stability ---------------------------------------------------------------
  auto* stab = app.add_subcommand("stability", "frequency-domain report");
  PmlParams sp;
  double s_sigma1 = 0.5, s_sigma2 = 0.0, s_rt = 1.0, s_kmax = 10.0;
  int s_knum = 41;
  std::string stab_out = ".";
  stab->add_option("--alpha0", sp.alpha0, "layer parameter alpha0");
  stab->add_option("--lambda0", sp.lambda0, "layer parameter lambda0");
  stab->add_option("--alpha1", sp.alpha1, "layer parameter alpha1");
  stab->add_option("--lambda1", sp.lambda1, "layer parameter lambda1");
  stab->add_option("--alpha0t", sp.alpha0t, "tilde parameter alpha0");
  stab->add_option("--lambda0t", sp.lambda0t, "tilde parameter lambda0");
  stab->add_option("--alpha1t", sp.alpha1t, "tilde parameter alpha1");
  stab->add_option("--lambda1t", sp.lambda1t, "tilde parameter lambda1");
  stab->add_option("--sigma1", s_sigma1, "damping strength in the x layer");
  stab->add_option("--sigma2", s_sigma2, "damping strength in the y layer");
  stab->add_option("--RT", s_rt, "gas constant times temperature");
  stab->add_option("--kmax", s_kmax, "wavenumber grid half width");
  stab->add_option("--knum", s_knum, "wavenumber grid points per direction");
  stab->add_option("--out", stab_out, "output directory");

  // anova -------------------------------------------------------------------
  auto* anv = app.add_subcommand("anova", "sensitivity study");
  std::string a_config, a_case = "pulse", a_functional = "g1";
  std::string a_sweep = "beta=0:4,L=0.25:0.8", a_nodes = "2", a_freeze;
  std::string a_out = ".", a_oracle;
  int a_workers = 1;
  bool a_resume = false;
  anv->add_option("--config", a_config, "base scenario JSON file");
  anv->add_option("--case", a_case, "pulse or vortex (when no config given)");
  anv->add_option("--functional", a_functional, "g1, g2, g3, h1 or h2");
  anv->add_option("--sweep", a_sweep, "box, e.g. beta=0:4,L=0.25:0.8");
  anv->add_option("--nodes", a_nodes, "cubature points per dimension (list)");
  anv->add_option("--freeze", a_freeze, "frozen values, e.g. alpha0=1,alpha1=1");
  anv->add_option("--out", a_out, "output directory");
  anv->add_option("--workers", a_workers, "parallel node evaluations");
  anv->add_flag("--resume", a_resume, "reuse cached evaluations");
  anv->add_option("--oracle", a_oracle,
                  "analytic test functional (additive or product)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim)
      return cmd_simulate(sim_config, sim_out, sim_noref, sim_snaps, sim_log);
    if (*stab)
      return cmd_stability(sp, s_sigma1, s_sigma2, s_rt, s_kmax, s_knum,
                           stab_out);
    if (*anv)
      return cmd_anova(a_config, a_case, a_functional, a_sweep, a_nodes,
                       a_freeze, a_out, a_workers, a_resume, a_oracle);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
