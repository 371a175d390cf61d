#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "rieszlab/scaling.hpp"

using namespace rieszlab;

TEST_CASE("exact power laws are recovered") {
  for (double s : {-0.5, -0.25, 0.0, 0.125, 1.0}) {
    std::vector<double> k, v;
    for (double x = 16; x <= 4096; x *= 2) {
      k.push_back(x);
      v.push_back(3.7 * std::pow(x, s));
    }
    const auto r = fit_slope(k, v);
    CHECK(r.slope == doctest::Approx(s).scale(1.0).epsilon(1e-12));
    CHECK(r.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-12));
    CHECK(r.residual < 1e-12);
    CHECK(r.slope_stderr < 1e-12);
    CHECK(r.k_min == 16);
    CHECK(r.k_max == 4096);
    CHECK(r.samples.size() == k.size());
    CHECK(r.slope_within(s, 1e-9));
    CHECK_FALSE(r.slope_within(s + 0.1, 0.05));
  }
}

TEST_CASE("noisy power law within a few hundredths") {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> noise(0.0, 0.02);
  std::vector<ScalingSample> s;
  for (double x = 32; x <= 32768; x *= 2) s.push_back({x, std::pow(x, -0.25) * std::exp(noise(gen))});
  const auto r = fit_slope(s);
  CHECK(r.slope == doctest::Approx(-0.25).scale(1.0).epsilon(0.03));
  CHECK(r.residual > 0.0);
  CHECK(r.slope_stderr > 0.0);
  CHECK(r.slope_stderr < 0.02);
}

TEST_CASE("invalid samples are rejected") {
  CHECK_THROWS_AS(fit_slope(std::vector<double>{1, 2, 3}, std::vector<double>{1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_slope(std::vector<double>{1, 2, 4, 3}, std::vector<double>{1, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_slope(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_slope(std::vector<double>{0, 2, 3, 4}, std::vector<double>{1, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_slope(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_slope(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, NAN, 1, 1}), std::invalid_argument);
}
