#include <doctest.h>

#include <boost/rational.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rieszlab/bump.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/experiment.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/rational.hpp"

using namespace rieszlab;

TEST_CASE("constant multiplier is the identity") {
  const auto e = random_expansion(2, 6, 3);
  const auto one = apply_multiplier(e, custom_profile("one", [](double) { return 1.0; }));
  CHECK(one == e);
  CHECK(one.truncation() == e.truncation());
}

TEST_CASE("band [k, k+1) keeps exactly one level") {
  const auto e = random_expansion(1, 10, 4);
  for (int k = 0; k <= 10; ++k) {
    const double E = 2.0 * k + 1;
    const auto kept = apply_multiplier(e, band_profile(E, E + 1));
    for (const auto& [mu, c] : kept.coefficients()) {
      CHECK(c == (mu.order() == k ? e.coefficient(mu) : Complex{}));
    }
  }
}

TEST_CASE("multiplier calculus composes") {
  const auto e = random_expansion(2, 8, 5);
  const auto inv = custom_profile("1/E", [](double E) { return 1.0 / E; });
  const auto inv2 = custom_profile("1/E^2", [](double E) { return 1.0 / (E * E); });
  CHECK(max_coefficient_difference(apply_multiplier(apply_multiplier(e, inv), inv), apply_multiplier(e, inv2)) < 1e-16);
  const auto r = riesz_profile(1.5, 4.0);
  const auto b = band_profile(3.0, 11.0);
  CHECK(max_coefficient_difference(apply_multiplier(apply_multiplier(e, r), b), apply_multiplier(e, product(r, b))) < 1e-16);
  CHECK(max_coefficient_difference(apply_multiplier(apply_multiplier(e, r), b), apply_multiplier(apply_multiplier(e, b), r)) < 1e-16);
}

TEST_CASE("non-finite multiplier values are rejected") {
  const auto e = random_expansion(1, 3, 1);
  CHECK_THROWS_AS(apply_multiplier(e, custom_profile("bad", [](double E) { return E > 4 ? std::numeric_limits<double>::infinity() : 1.0; })),
                  NumericalError);
}

TEST_CASE("Bochner-Riesz factors") {
  CHECK(riesz_factor(1.0, 1.0, std::sqrt(2.0)) == doctest::Approx(0.5));
  CHECK(riesz_factor(9.0, 2.0, 3.0) == 0.0);
  CHECK(riesz_factor(10.0, 0.5, 3.0) == 0.0);
  CHECK(riesz_factor(8.999, 0.0, 3.0) == 1.0);
  CHECK_THROWS_AS(riesz_profile(-0.1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(bochner_riesz(random_expansion(1, 2, 1), 1.0, 0.0), std::invalid_argument);

  const auto e = random_expansion(1, 12, 8);
  CHECK(bochner_riesz(e, 0.0, std::sqrt(2.0 * 12 + 1) + 0.1) == e);
  const auto s = bochner_riesz(e, 1.0, std::sqrt(2.0));
  for (const auto& [mu, c] : s.coefficients()) {
    CHECK(std::abs(c - (mu.order() == 0 ? 0.5 * e.coefficient(mu) : Complex{})) < 1e-16);
  }
}

TEST_CASE("Riesz coefficients increase to the input as R grows") {
  const auto e = random_expansion(2, 6, 9);
  double prev = -1.0;
  for (double R = 2.0; R < 80.0; R *= 1.5) {
    const auto s = bochner_riesz(e, 0.7, R);
    double fraction = 0.0;
    for (const auto& [mu, c] : s.coefficients()) {
      const double f = std::abs(c) / std::abs(e.coefficient(mu));
      CHECK(f <= 1.0);
      fraction += f;
    }
    CHECK(fraction >= prev);
    prev = fraction;
  }
}

TEST_CASE("critical index and a.e. threshold") {
  for (int n = 1; n <= 5; ++n) CHECK(critical_index(2.0, n) == 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(critical_index(inf, 2) == 0.5);
  CHECK(ae_threshold(inf, 2) == 0.25);
  CHECK(critical_index(4.0, 3) == 0.25);
  CHECK(ae_threshold(4.0, 3) == 0.125);
  CHECK_THROWS_AS(critical_index(0.5, 2), std::invalid_argument);
}

TEST_CASE("exact critical index against boost::rational") {
  using R = boost::rational<long long>;
  for (int n = 1; n <= 6; ++n) {
    for (int den = 1; den <= 9; ++den) {
      for (int num = 0; num <= den; ++num) {
        const R q(num, den);
        R d = q - R(1, 2);
        if (d < 0) d = -d;
        R expect = R(n) * d - R(1, 2);
        if (expect < 0) expect = 0;
        const auto got = critical_index_exact(Rational(num, den), n);
        CHECK(got.num() == expect.numerator());
        CHECK(got.den() == expect.denominator());
        const auto half = ae_threshold_exact(Rational(num, den), n);
        CHECK(half == Rational(expect.numerator(), expect.denominator()) / Rational(2));
      }
    }
  }
}

TEST_CASE("Rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(1, -3).den() == 3);
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
  CHECK(max(Rational(1, 7), Rational(1, 8)) == Rational(1, 7));
  CHECK(Rational(3, 4).to_string() == "3/4");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1, 1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(std::numeric_limits<std::int64_t>::max()) + Rational(1), std::overflow_error);
}

TEST_CASE("bump profiles") {
  CHECK(mollifier(0.0) == doctest::Approx(1.0));
  CHECK(mollifier(1.0) == 0.0);
  CHECK(mollifier(-1.5) == 0.0);
  const double h = 1e-6;
  for (double s : {-0.7, -0.2, 0.4, 0.9}) {
    CHECK(mollifier_derivative(s) == doctest::Approx((mollifier(s + h) - mollifier(s - h)) / (2 * h)).epsilon(1e-6));
  }
  const auto phi = square_function_bump();
  CHECK(phi.support_lo == 0.125);
  CHECK(phi.support_hi == 0.5);
  CHECK(phi(5.0 / 16) == doctest::Approx(1.0));
  for (double s = 0.0; s < 0.6; s += 0.01) {
    CHECK(std::fabs(phi(s)) <= 1.0);
    if (s <= 0.125 || s >= 0.5) CHECK(phi(s) == 0.0);
  }
  const auto lp = littlewood_paley_piece();
  for (double s = 0.8; s < 500.0; s *= 1.37) {
    double sum = 0.0;
    for (int k = -1; k < 14; ++k) sum += lp(std::ldexp(s, -k));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(1.5) == 0.0);
}
