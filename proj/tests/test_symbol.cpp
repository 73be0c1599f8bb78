#include <doctest.h>

#include <random>

#include "bgkpml/symbol.hpp"
#include "oracles.hpp"

using namespace bgkpml;

namespace {
const ModelConstants kConsts{1.0, 0.01};

PmlParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.1, 2.0), v(-0.5, 0.5);
  PmlParams p;
  p.alpha0 = u(rng);
  p.lambda0 = v(rng);
  p.alpha1 = v(rng);
  p.lambda1 = v(rng);
  p.alpha0t = u(rng);
  p.lambda0t = v(rng);
  p.alpha1t = v(rng);
  p.lambda1t = v(rng);
  return p;
}
}  // namespace

TEST_CASE("symbol structure") {
  SUBCASE("everything zero gives the zero matrix") {
    PmlParams p;
    p.alpha0 = 0.0;
    const Matrix18c m = assemble_symbol(0.0, 0.0, p, 0.0, 0.0, kConsts);
    CHECK(m.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("transport block spectrum sits on the imaginary axis") {
    PmlParams p;
    p.lambda0 = p.lambda0t = 0.0;
    const double k1 = 1.3, k2 = -0.7;
    const Matrix18c m = assemble_symbol(k1, k2, p, 0.0, 0.0, kConsts);
    Eigen::Matrix<Complex, 6, 6> ablock = m.block<6, 6>(0, 0);
    Eigen::ComplexEigenSolver<Eigen::Matrix<Complex, 6, 6>> es(ablock, false);

    const double nn = std::hypot(k1, k2);
    std::vector<double> want = {-std::sqrt(3.0) * nn, -nn, 0.0,
                                0.0, nn, std::sqrt(3.0) * nn};
    std::vector<double> got;
    for (int q = 0; q < 6; ++q) {
      CHECK(std::abs(es.eigenvalues()(q).real()) < 1e-12);
      got.push_back(es.eigenvalues()(q).imag());
    }
    std::sort(got.begin(), got.end());
    for (int q = 0; q < 6; ++q)
      CHECK(got[q] == doctest::Approx(want[q]).epsilon(1e-10));
  }

  SUBCASE("decoupled eigenvalues appear with multiplicities 6 and 2") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uk(-3.0, 3.0), us(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      PmlParams p = random_params(rng);
      const double k1 = uk(rng), k2 = uk(rng), s1 = us(rng);
      const Matrix18c m = assemble_symbol(k1, k2, p, s1, 0.0, kConsts);
      Eigen::ComplexEigenSolver<Matrix18c> es(m, false);

      const Complex theta_ev(-p.alpha0t, -k1 * p.alpha1t);
      const Complex omega_ev(-(p.alpha0 + s1), -k2 * p.alpha1);
      int n_theta = 0, n_omega = 0;
      for (int q = 0; q < 18; ++q) {
        if (std::abs(es.eigenvalues()(q) - theta_ev) < 1e-7) ++n_theta;
        if (std::abs(es.eigenvalues()(q) - omega_ev) < 1e-7) ++n_omega;
      }
      CHECK(n_theta >= 6);
      CHECK(n_omega >= 2);
    }
  }
}

TEST_CASE("real part of the symbol is k-independent") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> uk(-10.0, 10.0), us(0.0, 1.0);
  PmlParams p = random_params(rng);
  const double s1 = us(rng), s2 = us(rng);
  const Matrix18d m0 = symbol_real_part(p, s1, s2, kConsts);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix18c m = assemble_symbol(uk(rng), uk(rng), p, s1, s2, kConsts);
    CHECK((m.real() - m0).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("energy decay margin") {
  SUBCASE("zero parameters: pure transport, margin zero") {
    PmlParams p;
    p.alpha0 = 0.0;
    CHECK(std::abs(energy_decay_margin(p, 0.0, 0.0, kConsts)) < 1e-12);
  }

  SUBCASE("decay conditions give a nonpositive margin") {
    PmlParams p;
    p.alpha0 = p.alpha0t = 1.0;
    p.lambda0 = p.lambda0t = 0.1;
    CHECK(energy_decay_conditions(p, 0.5, 0.5));
    CHECK(energy_decay_margin(p, 0.5, 0.5, kConsts) <= 1e-10);
  }

  SUBCASE("violated condition alpha0 > -sigma1 gives growth") {
    PmlParams p;
    p.alpha0 = -1.0;
    p.alpha0t = 1.0;
    p.lambda0 = p.lambda0t = 0.1;
    CHECK(!energy_decay_conditions(p, 0.5, 0.5));
    CHECK(energy_decay_margin(p, 0.5, 0.5, kConsts) > 0.0);
  }

  SUBCASE("margin is independent of alpha1 and its tilde counterpart") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
      PmlParams p;
      p.alpha0 = 0.5 + u(rng);
      p.alpha0t = 0.5 + u(rng);
      p.lambda0 = 0.3;
      p.lambda0t = 0.2;
      const double s1 = 0.4, s2 = 0.1;
      const double base = energy_decay_margin(p, s1, s2, kConsts);
      p.alpha1 = u(rng);
      p.alpha1t = u(rng);
      CHECK(std::abs(energy_decay_margin(p, s1, s2, kConsts) - base) < 1e-12);
    }
  }

  SUBCASE("sampled decay region keeps the margin at zero") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ua(0.0, 3.5), ul(0.01, 0.5),
        us(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
      PmlParams p;
      p.alpha0 = ua(rng);
      p.alpha0t = ua(rng);
      p.lambda0 = ul(rng);
      p.lambda0t = ul(rng);
      const double s1 = us(rng), s2 = us(rng);
      REQUIRE(energy_decay_conditions(p, s1, s2));
      CHECK(energy_decay_margin(p, s1, s2, kConsts) <= 1e-10);
    }
  }
}

TEST_CASE("petrovskii scan of the stable preset") {
  PmlParams p;  // alpha0 = 1, lambdas zero
  p.alpha0t = 1.0;  // a zero alpha0t stacks defective zero eigenvalues
  KGrid kg{6.0, 9};
  CHECK(petrovskii_max_re(p, 0.5, 0.0, kConsts, kg) <= 1e-10);
}

TEST_CASE("tilde lambdas never reach the characteristic polynomial") {
  std::mt19937 rng(1234);
  PmlParams p = random_params(rng);
  const double k1 = 1.7, k2 = -2.3, s1 = 0.6;

  PmlParams q = p;
  q.lambda0t = p.lambda0t + 5.0;
  q.lambda1t = p.lambda1t - 3.0;

  const ComplexPoly a =
      test::char_poly_via_det(assemble_symbol(k1, k2, p, s1, 0.0, kConsts));
  const ComplexPoly b =
      test::char_poly_via_det(assemble_symbol(k1, k2, q, s1, 0.0, kConsts));
  CHECK(test::max_coeff_distance(a, b) < 1e-12 * a.max_abs_coeff());
}
