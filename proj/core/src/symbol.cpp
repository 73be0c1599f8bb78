#include "bgkpml/symbol.hpp"

namespace bgkpml {

Matrix18c assemble_symbol(double k1, double k2, const PmlParams& p,
                          double sigma1, double sigma2,
                          const ModelConstants& c) {
  const Complex I(0.0, 1.0);
  auto [a1m, a2m] = flux_matrices(c);

  Matrix18c b = Matrix18c::Zero();

  b.block<6, 6>(0, 0) =
      a1m.cast<Complex>() * (I * k1 + sigma1 * p.lambda0) +
      a2m.cast<Complex>() * (I * k2 + sigma2 * p.lambda0t);
  b.block<6, 6>(0, 6) = sigma1 * a1m.cast<Complex>();
  b.block<6, 6>(0, 12) = sigma2 * a2m.cast<Complex>();

  const Complex wa =
      I * k1 + p.lambda0 * (p.alpha0 + sigma1) - I * p.lambda1 * k2;
  const Complex ww = I * p.alpha1 * k2 + p.alpha0 + sigma1;
  b.block<6, 6>(6, 0) = wa * Matrix18c::Identity().block<6, 6>(0, 0);
  b.block<6, 6>(6, 6) = ww * Matrix18c::Identity().block<6, 6>(0, 0);

  const Complex ta =
      I * k2 + p.lambda0t * (p.alpha0t + sigma2) - I * p.lambda1t * k1;
  const Complex tt = I * p.alpha1t * k1 + p.alpha0t + sigma2;
  b.block<6, 6>(12, 0) = ta * Matrix18c::Identity().block<6, 6>(0, 0);
  b.block<6, 6>(12, 12) = tt * Matrix18c::Identity().block<6, 6>(0, 0);

  return -b;
}

Matrix18d symbol_real_part(const PmlParams& p, double sigma1, double sigma2,
                           const ModelConstants& c) {
  return assemble_symbol(0.0, 0.0, p, sigma1, sigma2, c).real();
}

double energy_decay_margin(const PmlParams& p, double sigma1, double sigma2,
                           const ModelConstants& c) {
  const Matrix18d m = symbol_real_part(p, sigma1, sigma2, c);
  Eigen::EigenSolver<Matrix18d> es(m, /*computeEigenvectors=*/false);
  double margin = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 18; ++k)
    margin = std::max(margin, es.eigenvalues()(k).real());
  return margin;
}

bool energy_decay_conditions(const PmlParams& p, double sigma1,
                             double sigma2) {
  return p.lambda0 > 0 && p.lambda0t > 0 && p.alpha0 > -sigma1 &&
         p.alpha0t > -sigma2;
}

double petrovskii_max_re(const PmlParams& p, double sigma1, double sigma2,
                         const ModelConstants& c, const KGrid& kg) {
  double worst = -std::numeric_limits<double>::infinity();
  const std::vector<double> ks = kg.values();
  for (double k1 : ks)
    for (double k2 : ks) {
      Eigen::ComplexEigenSolver<Matrix18c> es(
          assemble_symbol(k1, k2, p, sigma1, sigma2, c),
          /*computeEigenvectors=*/false);
      for (int m = 0; m < 18; ++m)
        worst = std::max(worst, es.eigenvalues()(m).real());
    }
  return worst;
}

}  // namespace bgkpml
