#include <benchmark/benchmark.h>

#include "bgkpml/char_poly.hpp"
#include "bgkpml/frank.hpp"
#include "bgkpml/symbol.hpp"

using namespace bgkpml;

static void symbol_assembly(benchmark::State& state) {
  PmlParams p;
  p.lambda0 = 0.1;
  p.alpha1 = 0.3;
  const ModelConstants c{1.0, 0.01};
  for (auto _ : state) {
    auto m = assemble_symbol(1.3, -2.1, p, 0.5, 0.0, c);
    benchmark::DoNotOptimize(m(0, 0));
  }
}
BENCHMARK(symbol_assembly);

static void symbol_eigensolve(benchmark::State& state) {
  PmlParams p;
  p.lambda0 = 0.1;
  const ModelConstants c{1.0, 0.01};
  const Matrix18c m = assemble_symbol(1.3, -2.1, p, 0.5, 0.0, c);
  for (auto _ : state) {
    Eigen::ComplexEigenSolver<Matrix18c> es(m, false);
    benchmark::DoNotOptimize(es.eigenvalues()(0));
  }
}
BENCHMARK(symbol_eigensolve);

static void quartic_continued_fraction(benchmark::State& state) {
  PmlParams p;
  p.lambda0 = 0.2;
  p.alpha1 = 0.4;
  p.lambda1 = 0.1;
  const ComplexPoly q = nu4(2.3, -1.7, p, 0.6);
  for (auto _ : state) {
    auto cf = frank_cf(q);
    benchmark::DoNotOptimize(cf.n_r);
  }
}
BENCHMARK(quartic_continued_fraction);

static void factorized_char_poly(benchmark::State& state) {
  PmlParams p;
  p.lambda0 = 0.2;
  for (auto _ : state) {
    auto poly = char_poly_product(1.1, 0.7, p, 0.5);
    benchmark::DoNotOptimize(poly.coeff[0]);
  }
}
BENCHMARK(factorized_char_poly);
