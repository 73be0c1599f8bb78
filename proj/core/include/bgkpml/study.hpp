#pragma once

#include <map>
#include <string>
#include <vector>

#include "bgkpml/anova.hpp"
#include "bgkpml/scenario.hpp"

namespace bgkpml {

/// One sensitivity study: a functional of the solution swept over a box of
/// layer parameters with everything else frozen. Sweepable coordinates are
/// alpha0, alpha1, beta and L.
struct StudySpec {
  FunctionalKind kind = FunctionalKind::g1;
  ScenarioConfig base;
  ParameterBox box;
  int nodes = 2;  // per-dimension Gauss-Legendre points
  std::map<std::string, double> frozen;

  void validate() const;
};

/// Applies one named parameter onto a configuration.
void apply_parameter(ScenarioConfig& cfg, const std::string& name,
                     double value);

/// Stable fingerprint of a study (used to match evaluation caches).
std::string study_signature(const StudySpec& spec);

struct StudyResult {
  StudySpec spec;
  EvalTable table;
  AnovaDecomposition dec;
  std::vector<double> tsi;  // per box coordinate
};

/// Runs the full pipeline: one shared reference trajectory, one layer run
/// per tensor node (in parallel across workers), then the decomposition and
/// the sensitivity indices. cache_path, when nonempty, persists node
/// evaluations; resume loads matching entries before evaluating.
StudyResult run_study(const StudySpec& spec, int workers = 1,
                      const std::string& cache_path = "", bool resume = false);

/// Same sweep evaluated for several functionals at once; every node runs a
/// single solver pair from which all functional values are extracted.
std::vector<StudyResult> run_study_multi(const StudySpec& spec,
                                         const std::vector<FunctionalKind>& kinds,
                                         int workers = 1);

/// Analytic stand-in functional on unit-cube coordinates ("additive" is the
/// sum of the coordinates, "product" their product). Used to check the
/// decomposition pipeline end to end without solving anything.
StudyResult run_study_with_oracle(const StudySpec& spec,
                                  const std::string& oracle, int workers = 1);

}  // namespace bgkpml
