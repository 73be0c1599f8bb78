#include "bgkpml/study.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace bgkpml {

namespace {

const char* kSweepable[] = {"alpha0", "alpha1", "beta", "L"};

bool sweepable(const std::string& name) {
  for (const char* s : kSweepable)
    if (name == s) return true;
  return false;
}

}  // namespace

void apply_parameter(ScenarioConfig& cfg, const std::string& name,
                     double value) {
  if (name == "alpha0")
    cfg.pml.alpha0 = value;
  else if (name == "alpha1")
    cfg.pml.alpha1 = value;
  else if (name == "lambda0")
    cfg.pml.lambda0 = value;
  else if (name == "lambda1")
    cfg.pml.lambda1 = value;
  else if (name == "beta")
    cfg.pml_beta = value;
  else if (name == "L")
    cfg.pml_L = value;
  else
    throw ConfigError("unknown study parameter: " + name);
}

void StudySpec::validate() const {
  base.validate();
  box.validate();
  if (nodes < 1) throw ConfigError("study: nodes must be >= 1");
  for (const auto& d : box.dims) {
    if (!sweepable(d.name))
      throw ConfigError("study: parameter " + d.name + " is not sweepable");
    if (frozen.count(d.name))
      throw ConfigError("study: parameter " + d.name +
                        " is both swept and frozen");
    if (d.name == "L" && !(d.lo >= base.grid.hx() * (1.0 - 1e-12)))
      throw ConfigError(
          "study: lower bound of L must span at least one grid cell");
  }
  for (const auto& [name, _] : frozen)
    if (!sweepable(name) && name != "lambda0" && name != "lambda1")
      throw ConfigError("study: unknown frozen parameter " + name);
}

std::string study_signature(const StudySpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << functional_name(spec.kind) << "|n=" << spec.nodes << "|box=";
  for (const auto& d : spec.box.dims)
    os << d.name << ":" << d.lo << ":" << d.hi << ";";
  os << "|frozen=";
  for (const auto& [k, v] : spec.frozen) os << k << ":" << v << ";";
  os << "|base=" << scenario_to_json(spec.base);
  // FNV-1a over the canonical text.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

namespace {

ScenarioConfig node_config(const StudySpec& spec,
                           const std::vector<double>& phys) {
  ScenarioConfig cfg = spec.base;
  for (const auto& [name, value] : spec.frozen)
    apply_parameter(cfg, name, value);
  for (int d = 0; d < spec.box.p(); ++d)
    apply_parameter(cfg, spec.box.dims[d].name, phys[d]);
  return cfg;
}

void save_cache(const EvalTable& table, const std::string& path,
                const std::string& signature) {
  std::ofstream out(path);
  if (!out) return;
  out << "# study_signature = " << signature << "\n";
  out << "index,status,value,error\n";
  out.precision(17);
  for (std::size_t i = 0; i < table.value.size(); ++i) {
    if (table.status[i] == NodeStatus::pending) continue;
    out << i << "," << (table.status[i] == NodeStatus::ok ? "ok" : "failed")
        << "," << table.value[i] << ",";
    for (char c : table.error[i]) out << (c == ',' || c == '\n' ? ';' : c);
    out << "\n";
  }
}

void load_cache(EvalTable& table, const std::string& path,
                const std::string& signature) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  if (!std::getline(in, line)) return;
  if (line.find(signature) == std::string::npos) return;  // different study
  std::getline(in, line);                                 // header row
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string idx, status, value, error;
    std::getline(row, idx, ',');
    std::getline(row, status, ',');
    std::getline(row, value, ',');
    std::getline(row, error);
    const std::size_t i = std::stoull(idx);
    if (i >= table.value.size()) continue;
    if (status == "ok") {
      table.status[i] = NodeStatus::ok;
      table.value[i] = std::stod(value);
    } else {
      table.status[i] = NodeStatus::failed;
      table.error[i] = error;
    }
  }
}

StudyResult finish(const StudySpec& spec, EvalTable table) {
  StudyResult r;
  r.spec = spec;
  r.dec = anova_terms(table, spec.box.p());
  r.tsi = tsi(r.dec);
  r.table = std::move(table);
  return r;
}

}  // namespace

StudyResult run_study(const StudySpec& spec, int workers,
                      const std::string& cache_path, bool resume) {
  spec.validate();
  const CubatureRule rule = CubatureRule::make(spec.nodes, spec.box.p());
  EvalTable table = make_eval_table(spec.box, rule);

  const std::string signature = study_signature(spec);
  if (resume && !cache_path.empty()) load_cache(table, cache_path, signature);

  // The reference run never sees the layer parameters, so one trajectory
  // serves every node.
  ScenarioConfig ref_cfg = spec.base;
  for (const auto& [name, value] : spec.frozen)
    apply_parameter(ref_cfg, name, value);
  const RefTrajectory ref = run_reference(ref_cfg);
  if (ref.failed)
    throw std::runtime_error("study: reference run failed at t = " +
                             std::to_string(ref.fail_time));

  Functional f = [&](const std::vector<double>& phys) {
    const ScenarioConfig cfg = node_config(spec, phys);
    const RunPairResult pair = run_pair(cfg, &ref);
    return functional_value(pair, spec.kind);
  };

  evaluate_on_grid(table, f, workers);
  if (!cache_path.empty()) save_cache(table, cache_path, signature);
  return finish(spec, std::move(table));
}

std::vector<StudyResult> run_study_multi(const StudySpec& spec,
                                         const std::vector<FunctionalKind>& kinds,
                                         int workers) {
  spec.validate();
  const CubatureRule rule = CubatureRule::make(spec.nodes, spec.box.p());

  ScenarioConfig ref_cfg = spec.base;
  for (const auto& [name, value] : spec.frozen)
    apply_parameter(ref_cfg, name, value);
  const RefTrajectory ref = run_reference(ref_cfg);
  if (ref.failed)
    throw std::runtime_error("study: reference run failed at t = " +
                             std::to_string(ref.fail_time));

  // One solver pair per node; all functionals read the same series.
  std::vector<EvalTable> tables(kinds.size());
  for (auto& t : tables) t = make_eval_table(spec.box, rule);

  EvalTable driver = make_eval_table(spec.box, rule);
  IndexedFunctional f = [&](std::size_t flat, const std::vector<double>& phys) {
    const ScenarioConfig cfg = node_config(spec, phys);
    const RunPairResult pair = run_pair(cfg, &ref);
    for (std::size_t q = 0; q < kinds.size(); ++q) {
      tables[q].value[flat] = functional_value(pair, kinds[q]);
      tables[q].status[flat] = NodeStatus::ok;
    }
    return tables[0].value[flat];
  };

  evaluate_on_grid(driver, f, workers);
  if (auto bad = driver.failed_nodes(); !bad.empty())
    throw PoisonedNodesError(std::move(bad));

  std::vector<StudyResult> out;
  for (std::size_t q = 0; q < kinds.size(); ++q) {
    StudySpec s = spec;
    s.kind = kinds[q];
    out.push_back(finish(s, std::move(tables[q])));
  }
  return out;
}

StudyResult run_study_with_oracle(const StudySpec& spec,
                                  const std::string& oracle, int workers) {
  spec.box.validate();
  const CubatureRule rule = CubatureRule::make(spec.nodes, spec.box.p());
  EvalTable table = make_eval_table(spec.box, rule);

  Functional f;
  if (oracle == "additive") {
    f = [&](const std::vector<double>& phys) {
      const std::vector<double> u = spec.box.to_unit(phys);
      double s = 0.0;
      for (double v : u) s += v;
      return s;
    };
  } else if (oracle == "product") {
    f = [&](const std::vector<double>& phys) {
      const std::vector<double> u = spec.box.to_unit(phys);
      double s = 1.0;
      for (double v : u) s *= v;
      return s;
    };
  } else {
    throw ConfigError("unknown oracle: " + oracle);
  }

  evaluate_on_grid(table, f, workers);
  return finish(spec, std::move(table));
}

}  // namespace bgkpml
