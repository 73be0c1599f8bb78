#include "bgkpml/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bgkpml {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

}  // namespace

void write_field_csv(const std::string& path, const Field& f,
                     const GridSpec& grid,
                     const std::map<std::string, std::string>& meta) {
  auto out = open_or_throw(path);
  out << "# nx = " << grid.nx << ", ny = " << grid.ny
      << ", hx = " << format_double(grid.hx())
      << ", hy = " << format_double(grid.hy())
      << ", x_min = " << format_double(grid.x_min)
      << ", y_min = " << format_double(grid.y_min) << "\n";
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << "\n";
  out << "x,y,value\n";
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      out << format_double(grid.x(i)) << "," << format_double(grid.y(j)) << ","
          << format_double(f(i, j)) << "\n";
}

void write_probe_csv(const std::string& path, const RunPairResult& r,
                     const std::string& provenance) {
  auto out = open_or_throw(path);
  out << "# config = " << provenance << "\n";
  out << "# denom_a1_line = " << format_double(r.denom_a1_line)
      << ", denom_a1_dom = " << format_double(r.denom_a1_dom)
      << ", denom_v_dom = " << format_double(r.denom_v_dom) << "\n";
  out << "t,err_a1,v_sup_err,a1_dom_err,v_dom_err\n";
  std::size_t dom = 0;
  for (std::size_t m = 0; m < r.t.size(); ++m) {
    out << format_double(r.t[m]) << "," << format_double(r.err_a1[m]) << ","
        << format_double(r.v_sup_err[m]) << ",";
    if (dom < r.dom_steps.size() &&
        r.dom_steps[dom] == static_cast<int>(m)) {
      out << format_double(r.a1_dom_err[dom]) << ","
          << format_double(r.v_dom_err[dom]);
      ++dom;
    } else {
      out << ",";
    }
    out << "\n";
  }
}

void write_tsi_csv(const std::string& path,
                   const std::vector<std::string>& parameter_names,
                   const std::vector<TsiRow>& rows,
                   const std::string& provenance) {
  auto out = open_or_throw(path);
  out << "# config = " << provenance << "\n";
  out << "cubature";
  for (const auto& n : parameter_names) out << "," << n;
  out << "\n";
  for (const auto& row : rows) {
    out << row.rule_label;
    for (double v : row.values) out << "," << format_double(v);
    out << "\n";
  }
}

void write_decomposition_json(const std::string& path, const StudyResult& r,
                              const std::string& provenance) {
  nlohmann::json j;
  j["functional"] = functional_name(r.spec.kind);
  j["rule"] = r.dec.rule.label();
  j["evaluations"] = r.table.value.size();
  j["config"] = nlohmann::json::parse(provenance);

  nlohmann::json box = nlohmann::json::array();
  for (const auto& d : r.dec.box.dims)
    box.push_back({{"name", d.name}, {"lo", d.lo}, {"hi", d.hi}});
  j["box"] = box;

  nlohmann::json frozen;
  for (const auto& [k, v] : r.spec.frozen) frozen[k] = v;
  j["frozen"] = frozen;

  j["g0"] = r.dec.g0;
  j["total_variance"] = r.dec.total_variance;

  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : r.dec.terms) {
    nlohmann::json subset = nlohmann::json::array();
    for (int d = 0; d < r.dec.box.p(); ++d)
      if (t.mask & (1u << d)) subset.push_back(r.dec.box.dims[d].name);
    terms.push_back({{"subset", subset},
                     {"variance", t.variance},
                     {"share", r.dec.total_variance > 0
                                   ? t.variance / r.dec.total_variance
                                   : 0.0}});
  }
  j["terms"] = terms;

  nlohmann::json tsi_obj;
  for (int d = 0; d < r.dec.box.p(); ++d)
    tsi_obj[r.dec.box.dims[d].name] = r.tsi[d];
  j["tsi"] = tsi_obj;

  auto out = open_or_throw(path);
  out << j.dump(2) << "\n";
}

void write_fsign_csv(const std::string& path, const InstabilityScan& scan,
                     const std::string& provenance) {
  auto out = open_or_throw(path);
  out << "# config = " << provenance << "\n";
  out << "k1,k2,f,sign\n";
  for (std::size_t i1 = 0; i1 < scan.k.size(); ++i1)
    for (std::size_t i2 = 0; i2 < scan.k.size(); ++i2) {
      const double f = scan.f_at(static_cast<int>(i1), static_cast<int>(i2));
      out << format_double(scan.k[i1]) << "," << format_double(scan.k[i2])
          << "," << format_double(f) << "," << (f > 0 ? 1 : (f < 0 ? -1 : 0))
          << "\n";
    }
}

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_or_throw(path);
  out << content;
}

}  // namespace bgkpml
