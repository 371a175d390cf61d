#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/expansion.hpp"
#include "rieszlab/experiment.hpp"
#include "rieszlab/hermite.hpp"
#include "rieszlab/multi_index.hpp"

using namespace rieszlab;

namespace {

double max_abs(const Expansion& e) {
  double m = 0.0;
  for (const auto& [mu, c] : e.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("analyze recovers single eigenfunctions") {
  const int K = 6;
  const auto rule = build_rule(K);
  for (const MultiIndex& nu : {MultiIndex{0, 0}, MultiIndex{2, 3}, MultiIndex{6, 0}, MultiIndex{1, 4}}) {
    const auto e = analyze([&](std::span<const double> x) { return Complex(hermite_nd(nu, x), 0.0); }, 2, K, rule);
    for (const auto& [mu, c] : e.coefficients()) {
      CHECK(std::abs(c - Complex(mu == nu ? 1.0 : 0.0, 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("analyze of zero is zero") {
  RuleOptions coarse;
  coarse.panel_order = 8;
  const auto rule = build_rule(5, 0.0, coarse);
  const auto e = analyze([](std::span<const double>) { return Complex{}; }, 3, 5, rule);
  CHECK(max_abs(e) == 0.0);
}

TEST_CASE("x1 exp(-|x|^2/2) in two dimensions has a single coefficient") {
  const auto rule = build_rule(4);
  const auto e = analyze([](std::span<const double> x) { return Complex(x[0] * std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2), 0.0); },
                         2, 4, rule);
  // <x e^{-x^2/2}, h_1> <e^{-y^2/2}, h_0> = (sqrt(2) pi^{-1/4} sqrt(pi)/2) (pi^{-1/4} sqrt(pi)).
  const double expected = std::sqrt(std::numbers::pi) / std::sqrt(2.0);
  for (const auto& [mu, c] : e.coefficients()) {
    if (mu == MultiIndex{1, 0}) {
      CHECK(c.real() == doctest::Approx(expected).epsilon(1e-12));
    } else {
      CHECK(std::abs(c) < 1e-13);
    }
  }
}

TEST_CASE("analyze requires a rule of sufficient degree") {
  const auto rule = build_rule(3);
  CHECK_THROWS(analyze([](std::span<const double>) { return Complex{1.0, 0.0}; }, 1, 5, rule));
}

TEST_CASE("synthesize of the ground coefficient is the Gaussian") {
  Expansion e(1, 0);
  e.set(MultiIndex{0}, 1.0);
  for (double x : {-2.0, 0.0, 0.7, 3.5}) {
    const double g = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2);
    CHECK(synthesize(e, std::vector<double>{x}).real() == doctest::Approx(g).epsilon(1e-14));
  }
}

TEST_CASE("synthesis of a random expansion against a direct double loop") {
  const int K = 32;
  const auto e = random_expansion(1, K, 42);
  std::vector<double> xs;
  for (double x = -7.0; x <= 7.0; x += 0.35) xs.push_back(x);
  const auto fast = synthesize_1d(e, xs);
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Complex direct{};
    for (const auto& [mu, c] : e.coefficients()) direct += c * oracle::hermite(mu[0], xs[i]);
    worst = std::max(worst, std::abs(direct - fast[i]));
    CHECK(std::abs(synthesize(e, std::vector<double>{xs[i]}) - direct) < 1e-11);
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("round trip, Parseval and linearity on bandlimited inputs") {
  for (int n : {1, 2, 3}) {
    const int K = n == 3 ? 6 : 20;
    RuleOptions options;
    if (n == 3) options.panel_order = 8;
    const auto rule = build_rule(K, 0.0, options);
    const TensorGrid grid(n, rule);
    const auto a = random_expansion(n, K, 7 + n);
    const auto b = random_expansion(n, K, 100 + n);
    const auto va = synthesize_grid(a, grid);
    const auto vb = synthesize_grid(b, grid);
    const auto back = analyze_samples(grid, va, K);
    CHECK(max_coefficient_difference(back, a) < 1e-10);

    // Parseval with the tensor weights.
    double l2 = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      double w = 1.0;
      std::size_t rest = p;
      for (int d = 0; d < n; ++d) {
        w *= grid.weights[rest % grid.axis_size()];
        rest /= grid.axis_size();
      }
      l2 += w * std::norm(va[p]);
    }
    CHECK(l2 == doctest::Approx(a.norm_squared()).epsilon(1e-8));

    std::vector<Complex> mix(va.size());
    const Complex s(0.3, -1.1);
    for (std::size_t p = 0; p < va.size(); ++p) mix[p] = va[p] + s * vb[p];
    const auto lin = analyze_samples(grid, mix, K);
    for (const auto& [mu, c] : lin.coefficients()) {
      CHECK(std::abs(c - (a.coefficient(mu) + s * b.coefficient(mu))) < 1e-10);
    }
    const auto twice = analyze_samples(grid, synthesize_grid(back, grid), K);
    CHECK(max_coefficient_difference(twice, back) < 1e-10);
  }
}

TEST_CASE("even functions have no odd-level coefficients") {
  const auto rule = build_rule(15);
  const auto e = analyze([](std::span<const double> x) { return Complex(std::exp(-0.7 * x[0] * x[0]) * std::cos(x[1]) * std::exp(-x[1] * x[1] / 3), 0.0); },
                         2, 15, rule);
  for (const auto& [mu, c] : e.coefficients()) {
    if (mu.order() % 2) CHECK(std::abs(c) < 1e-14);
  }
}

TEST_CASE("expansion bookkeeping and text format") {
  Expansion e(2, 3);
  e.set({1, 2}, Complex(0.25, -1.0 / 3.0));
  e.set({0, 0}, 2.0);
  CHECK_THROWS(e.set({3, 1}, 1.0));
  CHECK_THROWS(e.coefficient(MultiIndex{1}));
  CHECK(e.coefficient({2, 0}) == Complex{});
  CHECK(e.level(3).coefficients().size() == 1);
  CHECK(e.norm_squared() == doctest::Approx(4.0 + 1.0 / 16 + 1.0 / 9));

  const auto text = e.to_text();
  CHECK(text.rfind("2 3\n", 0) == 0);
  const auto back = Expansion::from_text(text);
  CHECK(back == e);
  CHECK_THROWS_AS(Expansion::from_text("2 3\n1 2 0.5\n"), FormatError);
  CHECK_THROWS_AS(Expansion::from_text("1 2\n5 1 0\n"), FormatError);
}

TEST_CASE("random_expansion is deterministic and unit-norm") {
  const auto a = random_expansion(2, 5, 9);
  const auto b = random_expansion(2, 5, 9);
  const auto c = random_expansion(2, 5, 10);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.coefficients().size() == 21);
}
