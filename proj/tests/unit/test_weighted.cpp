#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "rieszlab/experiment.hpp"
#include "rieszlab/hermite.hpp"
#include "rieszlab/weighted.hpp"

using namespace rieszlab;

TEST_CASE("weighted moments against adaptive Gauss-Kronrod") {
  for (int k : {0, 1, 7, 30}) {
    for (double alpha : {0.5, 1.0, 2.0, 3.5}) {
      for (int sign : {-1, 1}) {
        auto f = [&](double x) { return oracle::hermite(k, x) * oracle::hermite(k, x) * std::pow(1.0 + x, sign * alpha); };
        const double L = std::sqrt(2.0 * k + 1) + 14.0;
        const double ref = 2.0 * oracle::integrate(f, 0.0, L, 1e-14);
        CHECK(hermite_weighted_moment(k, alpha, sign) == doctest::Approx(ref).epsilon(1e-10));
      }
    }
    CHECK(hermite_weighted_moment(k, 0.0, -1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // k = 0, alpha = 2, weight (1+|x|)^2: 1 + 2 E|x| + E x^2 under h_0^2 = e^{-x^2}/sqrt(pi).
  const double direct = 1.0 + 2.0 / std::sqrt(std::numbers::pi) + 0.5;
  CHECK(hermite_weighted_moment(0, 2.0, 1) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("weighted_norm of samples matches the moment") {
  const int k = 9;
  const auto rule = build_rule(k, 1.5);
  std::vector<double> v;
  for (double x : rule.nodes()) v.push_back(hermite_1d(k, x));
  const double got = weighted_norm(std::span<const double>(v), WeightSpec{1.5, -1, 1}, rule);
  CHECK(got * got == doctest::Approx(hermite_weighted_moment(k, 1.5, -1)).epsilon(1e-11));
  CHECK_THROWS(weighted_norm(std::span<const double>(v), WeightSpec{1.5, 0, 1}, rule));
}

TEST_CASE("band projection norm routes agree") {
  for (int k : {0, 1, 4, 7}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const auto radial = band_projection_weighted_norm(k, 2, alpha, NormMethod::radial);
      const auto cart = band_projection_weighted_norm(k, 2, alpha, NormMethod::cartesian);
      const auto dual = band_projection_weighted_norm(k, 2, alpha, NormMethod::dual_svd);
      CHECK(radial.value == doctest::Approx(cart.value).epsilon(1e-9));
      CHECK(dual.value == doctest::Approx(cart.value).epsilon(1e-9));
      CHECK(radial.dimension == level_multiplicity(k, 2));
    }
  }
  // Three dimensions needs a 3-D tensor grid for the dense route; one case.
  CHECK(band_projection_weighted_norm(2, 3, 0.5, NormMethod::radial).value ==
        doctest::Approx(band_projection_weighted_norm(2, 3, 0.5, NormMethod::cartesian).value).epsilon(1e-9));
  const auto r = band_projection_gram_spectrum(5, 2, 1.0, NormMethod::radial);
  auto c = band_projection_gram_spectrum(5, 2, 1.0, NormMethod::cartesian);
  REQUIRE(r.size() == c.size());
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(c[i]).epsilon(1e-9));
  CHECK(std::is_sorted(r.rbegin(), r.rend()));
}

TEST_CASE("band projection norm in one dimension is the square-rooted moment") {
  for (int k : {0, 3, 40}) {
    const auto est = band_projection_weighted_norm(k, 1, 1.5);
    CHECK(est.value == doctest::Approx(std::sqrt(hermite_weighted_moment(k, 1.5, -1))).epsilon(1e-12));
    CHECK(est.dimension == 1);
  }
}

TEST_CASE("band projection norm: alpha = 0 gives 1, decreasing in alpha") {
  for (int n : {1, 2, 4}) {
    CHECK(band_projection_weighted_norm(6, n, 0.0).value == doctest::Approx(1.0).epsilon(1e-10));
    double prev = 2.0;
    for (double alpha = 0.25; alpha <= 4.0; alpha += 0.25) {
      const double v = band_projection_weighted_norm(6, n, alpha).value;
      CHECK(v < prev);
      CHECK(v > 0.0);
      prev = v;
    }
  }
  CHECK_THROWS(band_projection_weighted_norm(-1, 2, 1.0));
}

TEST_CASE("local band mass lies in (0, 1] and fills up with M") {
  for (int n : {1, 2, 3}) {
    double prev = 0.0;
    for (double M : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double m = local_band_mass(5, n, M);
      CHECK(m > 0.0);
      CHECK(m <= 1.0 + 1e-12);
      CHECK(m >= prev - 1e-14);
      prev = m;
    }
    CHECK(local_band_mass(5, n, 30.0) == doctest::Approx(1.0).epsilon(1e-10));
  }
  const double ref = oracle::integrate([](double x) { return oracle::hermite(4, x) * oracle::hermite(4, x); }, -1.3, 1.3);
  CHECK(local_band_mass(4, 1, 1.3) == doctest::Approx(ref).epsilon(1e-11));
  CHECK_THROWS(local_band_mass(3, 1, 0.0));
}

TEST_CASE("Sobolev weight ratio") {
  const auto f = random_expansion(1, 8, 4);
  CHECK(sobolev_weight_ratio(f, 0.0) == doctest::Approx(1.0).epsilon(1e-10));

  // Phi_0 in one dimension: H Phi_0 = Phi_0.
  Expansion g(1, 0);
  g.set(MultiIndex{0}, 1.0);
  const double alpha = 0.75;
  const double num = 2.0 * oracle::integrate([&](double x) { return std::exp(-x * x) / std::sqrt(std::numbers::pi) * std::pow(1.0 + x, 4 * alpha); },
                                             0.0, 20.0, 1e-14);
  CHECK(sobolev_weight_ratio(g, alpha) == doctest::Approx(std::sqrt(num) / std::pow(2.0, alpha)).epsilon(1e-10));

  double worst = 0.0;
  for (unsigned seed = 1; seed <= 12; ++seed) worst = std::max(worst, sobolev_weight_ratio(random_expansion(2, 10, seed), 0.5));
  CHECK(worst < 3.0);
  CHECK_THROWS(sobolev_weight_ratio(Expansion(1, 2), 0.5));
}

TEST_CASE("restriction sup norm and kernel diagonal") {
  const auto r0 = restriction_sup_norm(0, 1);
  CHECK(r0.value == doctest::Approx(oracle::hermite(0, 0.0)).epsilon(1e-12));
  CHECK(r0.argmax_radius == doctest::Approx(0.0).scale(1.0));

  // Diagonal against the explicit sum over the level.
  for (int n : {2, 3}) {
    for (double r : {0.0, 0.8, 2.5}) {
      double s = 0.0;
      for (const auto& mu : level_indices(5, n)) {
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        x[0] = r;
        s += hermite_nd(mu, x) * hermite_nd(mu, x);
      }
      CHECK(projection_kernel_diagonal(5, n, r) == doctest::Approx(s).epsilon(1e-13));
    }
  }
  const auto res = restriction_sup_norm(20, 2);
  CHECK(res.grid_adequate);
  double brute = 0.0;
  for (double r = 0.0; r < 9.0; r += 1e-3) brute = std::max(brute, projection_kernel_diagonal(20, 2, r));
  CHECK(res.value == doctest::Approx(std::sqrt(brute)).epsilon(1e-6));
  const auto limited = restriction_sup_norm(20, 2, 1.0);
  CHECK(limited.value <= res.value);
  CHECK(limited.argmax_radius <= 1.0);
}

TEST_CASE("N_k^{2,q} norm") {
  const auto one = [](double) { return 1.0; };
  for (double q : {1.0, 2.0, 7.0, std::numeric_limits<double>::infinity()}) CHECK(nk2q_norm(one, 5, q).value == doctest::Approx(1.0));
  const int N = 4;
  const auto cell = [&](double x) { return x >= 3.0 / 16 && x < 4.0 / 16 ? 1.0 : 0.0; };
  for (double q : {1.0, 2.0, 3.0}) CHECK(nk2q_norm(cell, N, q).value == doctest::Approx(std::pow(N, -2.0 / q)).epsilon(1e-14));
  CHECK(nk2q_norm(cell, N, std::numeric_limits<double>::infinity()).value == 1.0);

  // Power means of a probability measure do not decrease with q.
  const auto F = [](double x) { return std::sin(7 * x) * std::exp(x); };
  double prev = 0.0;
  for (double q = 1.0; q <= 12.0; q += 0.5) {
    const double v = nk2q_norm(F, 6, q).value;
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  CHECK(prev <= nk2q_norm(F, 6, std::numeric_limits<double>::infinity()).value + 1e-15);
  CHECK_THROWS(nk2q_norm(F, 0, 2.0));
  CHECK_THROWS(nk2q_norm(F, 3, 0.5));
}

TEST_CASE("k^{1/4} times the local mass root stays in a fixed bracket") {
  std::vector<double> scaled;
  for (int k = 64; k <= 2048; k *= 2) scaled.push_back(std::pow(k, 0.25) * std::sqrt(local_band_mass(k, 1, 1.0)));
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  CHECK(*lo > 0.5);
  CHECK(*hi < 2.0);
}
