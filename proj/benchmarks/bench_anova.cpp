#include <benchmark/benchmark.h>

#include <cmath>

#include "bgkpml/anova.hpp"

using namespace bgkpml;

namespace {

EvalTable filled_table(int n, int p) {
  ParameterBox box;
  for (int d = 0; d < p; ++d)
    box.dims.push_back({"x" + std::to_string(d), 0.0, 1.0});
  EvalTable t = make_eval_table(box, CubatureRule::make(n, p));
  evaluate_on_grid(t, Functional([](const std::vector<double>& x) {
                     double acc = 1.0;
                     for (double v : x) acc *= 1.0 + std::sin(3.0 * v);
                     return acc;
                   }));
  return t;
}

}  // namespace

static void decomposition_4d(benchmark::State& state) {
  const EvalTable t = filled_table(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    auto dec = anova_terms(t, 4);
    benchmark::DoNotOptimize(dec.total_variance);
  }
}
BENCHMARK(decomposition_4d)->Arg(2)->Arg(3)->Arg(4);

static void sensitivity_indices(benchmark::State& state) {
  const auto dec = anova_terms(filled_table(3, 4), 4);
  for (auto _ : state) {
    auto s = tsi(dec);
    benchmark::DoNotOptimize(s[0]);
  }
}
BENCHMARK(sensitivity_indices);
