#include <doctest.h>

#include <random>

#include "bgkpml/char_poly.hpp"
#include "bgkpml/frank.hpp"
#include "oracles.hpp"

using namespace bgkpml;
using bgkpml::test::companion_roots;

TEST_CASE("polynomial basics") {
  ComplexPoly p({Complex(1), Complex(2), Complex(1)});  // (z+1)^2
  CHECK(p.degree() == 2);
  CHECK(std::abs(p.eval(Complex(-1, 0))) < 1e-15);

  auto q = ComplexPoly::from_roots(std::vector<Complex>{{1, 1}, {1, -1}});
  CHECK(q.degree() == 2);
  CHECK(std::abs(q.eval(Complex(1, 1))) < 1e-14);
  // (z - (1+i))(z - (1-i)) = z^2 - 2z + 2
  CHECK(std::abs(q.coeff[0] - Complex(2, 0)) < 1e-14);
  CHECK(std::abs(q.coeff[1] - Complex(-2, 0)) < 1e-14);
}

TEST_CASE("continued fraction on the worked pair") {
  SUBCASE("left-half-plane pair") {
    ComplexPoly q({Complex(2), Complex(2), Complex(1)});  // z^2 + 2z + 2
    auto cf = frank_cf(q);
    REQUIRE(!cf.undefined);
    REQUIRE(cf.n_r == 2);
    CHECK(cf.steps[0].c == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(cf.steps[1].c == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(cf.negative_c() == 2);
    CHECK(cf.positive_c() == 0);
    CHECK(cf.on_axis() == 0);
  }

  SUBCASE("mirrored right-half-plane pair") {
    ComplexPoly q({Complex(2), Complex(-2), Complex(1)});  // z^2 - 2z + 2
    auto cf = frank_cf(q);
    REQUIRE(!cf.undefined);
    CHECK(cf.positive_c() == 2);
    CHECK(cf.negative_c() == 0);
  }

  SUBCASE("imaginary-axis roots terminate the chain") {
    ComplexPoly q({Complex(1), Complex(0), Complex(1)});  // z^2 + 1
    auto cf = frank_cf(q);
    CHECK(!cf.undefined);
    CHECK(cf.n_r == 0);
    CHECK(cf.on_axis() == 2);
  }

  SUBCASE("degree below one rejected") {
    CHECK_THROWS(frank_cf(ComplexPoly({Complex(3)})));
  }
}

TEST_CASE("sign counts agree with the companion-matrix oracle") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> ure(0.05, 2.0), uim(-2.0, 2.0),
      uph(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> udeg(1, 6), usign(0, 1);

  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int deg = udeg(rng);
    std::vector<Complex> roots(deg);
    int want_pos = 0, want_neg = 0;
    for (auto& r : roots) {
      double re = ure(rng) * (usign(rng) ? 1.0 : -1.0);
      r = Complex(re, uim(rng));
      (re > 0 ? want_pos : want_neg)++;
    }
    ComplexPoly q = ComplexPoly::from_roots(roots);
    // exercise the phase normalization with a random unimodular factor
    const double ph = uph(rng);
    q = q.scaled(Complex(std::cos(ph), std::sin(ph)));

    auto cf = frank_cf(q);
    REQUIRE(!cf.undefined);
    CHECK(cf.positive_c() == want_pos);
    CHECK(cf.negative_c() == want_neg);
    CHECK(cf.on_axis() == 0);

    // the oracle agrees with the construction
    auto cr = companion_roots(q);
    int oracle_pos = 0, oracle_neg = 0;
    for (auto r : cr) (r.real() > 0 ? oracle_pos : oracle_neg)++;
    CHECK(oracle_pos == want_pos);
    CHECK(oracle_neg == want_neg);
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("first quartic coefficient matches the closed form") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> ua(0.2, 3.0), us(0.0, 1.0),
      uk(-5.0, 5.0), up(-0.5, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    PmlParams p;
    p.alpha0 = ua(rng);
    p.alpha1 = up(rng);
    p.lambda0 = up(rng);
    p.lambda1 = up(rng);
    const double s1 = us(rng);
    const double k1 = uk(rng), k2 = uk(rng);

    auto cf = frank_cf(mu4(k1, k2, p, s1));
    REQUIRE(!cf.undefined);
    REQUIRE(cf.n_r >= 1);
    const double want = c1_closed_form(p, s1);
    CHECK(std::abs(cf.steps[0].c - want) <= 1e-10 * std::abs(want));
  }
}

TEST_CASE("second quartic coefficient matches the closed form") {
  std::mt19937 rng(321);
  std::uniform_real_distribution<double> ua(0.3, 3.0), us(0.05, 1.0),
      uk(-4.0, 4.0), up(-0.5, 0.5);
  int compared = 0;
  for (int trial = 0; trial < 50; ++trial) {
    PmlParams p;
    p.alpha0 = ua(rng);
    p.alpha1 = up(rng);
    p.lambda0 = up(rng);
    p.lambda1 = up(rng);
    const double s1 = us(rng);
    const double k1 = uk(rng), k2 = uk(rng);

    auto cf = frank_cf(mu4(k1, k2, p, s1));
    REQUIRE(!cf.undefined);
    REQUIRE(cf.n_r >= 2);
    const auto c2 = c2_closed_form(k1, k2, p, s1);
    CHECK(std::abs(cf.steps[1].c - c2.value) <= 1e-8 * std::abs(c2.value));
    ++compared;
  }
  CHECK(compared == 50);
}
