#include "bgkpml/cubature.hpp"

#include <cmath>
#include <numbers>

namespace bgkpml {

GaussLegendre GaussLegendre::make(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: n must be >= 1");

  GaussLegendre g;
  g.n = n;
  g.node.resize(n);
  g.weight.resize(n);

  // Newton iteration on P_n over [-1,1], Chebyshev-angle initial guesses.
  for (int k = 0; k < n; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pn1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // map [-1,1] -> [0,1]; weight 2/((1-x^2) dp^2) normalized by 1/2
    g.node[n - 1 - k] = 0.5 * (x + 1.0);
    g.weight[n - 1 - k] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

CubatureRule CubatureRule::make(int n, int p) {
  if (p < 1) throw std::invalid_argument("CubatureRule: p must be >= 1");
  CubatureRule r;
  r.n = n;
  r.p = p;
  r.g1d = GaussLegendre::make(n);
  return r;
}

}  // namespace bgkpml
