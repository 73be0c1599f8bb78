#pragma once

#include <map>
#include <string>
#include <vector>

#include "bgkpml/char_poly.hpp"
#include "bgkpml/scenario.hpp"
#include "bgkpml/study.hpp"

namespace bgkpml {

/// Deterministic shortest round-trip formatting for doubles.
std::string format_double(double v);

/// (x, y, value) triples, row-major, with grid metadata and the resolved
/// configuration in comment lines.
void write_field_csv(const std::string& path, const Field& f,
                     const GridSpec& grid,
                     const std::map<std::string, std::string>& meta);

/// Per-step probe series: t, err_a1 and the raw functional integrands.
void write_probe_csv(const std::string& path, const RunPairResult& r,
                     const std::string& provenance);

/// TSI table in the usual layout: one row per cubature rule, one column per
/// swept parameter.
struct TsiRow {
  std::string rule_label;
  std::vector<double> values;
};
void write_tsi_csv(const std::string& path,
                   const std::vector<std::string>& parameter_names,
                   const std::vector<TsiRow>& rows,
                   const std::string& provenance);

/// Full decomposition export: box, rule, mean, per-subset variances, TSIs.
void write_decomposition_json(const std::string& path, const StudyResult& r,
                              const std::string& provenance);

/// f(k1,k2) sign map as (k1, k2, f, sign) rows.
void write_fsign_csv(const std::string& path, const InstabilityScan& scan,
                     const std::string& provenance);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace bgkpml
