#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "rieszlab/hermite.hpp"
#include "rieszlab/hermite_table.hpp"
#include "rieszlab/multi_index.hpp"

using namespace rieszlab;

TEST_CASE("hermite_1d small-degree values") {
  CHECK(hermite_1d(0, 0.0) == doctest::Approx(0.7511255444649425).epsilon(1e-15));
  CHECK(hermite_1d(1, 0.0) == 0.0);
  const double h2 = -2.0 / std::sqrt(4.0 * 2.0 * std::sqrt(std::numbers::pi));
  CHECK(hermite_1d(2, 0.0) == doctest::Approx(h2).epsilon(1e-14));
  CHECK(h2 == doctest::Approx(-0.53110).epsilon(1e-4));
}

TEST_CASE("hermite_1d matches the polynomial definition in extended precision") {
  for (int k : {0, 1, 2, 5, 10, 20, 40, 60}) {
    for (double t : {-3.7, -1.2, 0.0, 0.5, 2.25, 6.0}) {
      const double ref = oracle::hermite(k, t);
      CHECK(hermite_1d(k, t) == doctest::Approx(ref).epsilon(1e-12).scale(1e-14));
    }
  }
}

TEST_CASE("hermite_upto agrees with hermite_1d and rejects a wrong size") {
  std::vector<double> out(51);
  hermite_upto(50, 1.3, out);
  for (int k = 0; k <= 50; ++k) CHECK(out[static_cast<std::size_t>(k)] == hermite_1d(k, 1.3));
  std::vector<double> wrong(3);
  CHECK_THROWS_AS(hermite_upto(5, 0.0, wrong), std::invalid_argument);
}

TEST_CASE("high degrees stay finite and underflow only far out") {
  for (int k : {1000, 4096, 16384}) {
    const double edge = std::sqrt(2.0 * k + 1);
    for (double t : {0.0, 0.5 * edge, edge, edge + 5.0}) CHECK(std::isfinite(hermite_1d(k, t)));
    CHECK(hermite_1d(k, 0.9 * edge) != 0.0);
  }
  CHECK(hermite_1d(10, 60.0) == 0.0);
}

TEST_CASE("symmetry h_k(-t) = (-1)^k h_k(t)") {
  for (int k = 0; k <= 300; k += 7) {
    for (double t : {0.1, 1.7, 9.3, 20.0}) {
      const double s = (k % 2 ? -1.0 : 1.0);
      CHECK(hermite_1d(k, -t) == s * hermite_1d(k, t));
    }
  }
}

TEST_CASE("orthonormality against an independent trapezoid rule") {
  const int K = 64;
  const double L = std::sqrt(2.0 * K + 1) + 12.0;
  double worst = 0.0;
  for (int j = 0; j <= K; j += 3) {
    for (int k = j; k <= K; k += 5) {
      const double v = oracle::trapezoid([&](double t) { return hermite_1d(j, t) * hermite_1d(k, t); }, L, 0.02);
      worst = std::max(worst, std::fabs(v - (j == k ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("eigen-residual of -h'' + t^2 h = (2k+1) h") {
  for (int k : {0, 3, 16, 64, 128}) {
    const double E = 2.0 * k + 1;
    const double half = std::sqrt(E) / 2;
    const double step = 1e-3;
    double worst = 0.0, amp = 0.0;
    for (double t = -half; t <= half; t += 0.01) {
      const double hm = hermite_1d(k, t - step), h0 = hermite_1d(k, t), hp = hermite_1d(k, t + step);
      const double second = (hp - 2 * h0 + hm) / (step * step);
      worst = std::max(worst, std::fabs(-second + t * t * h0 - E * h0));
      amp = std::max(amp, std::fabs(h0));
    }
    CHECK(worst <= 1e-4 * E * amp);
  }
}

TEST_CASE("pointwise bound k^{-1/4} on [-M, M] with a stable constant") {
  for (double M : {1.0, 2.0, 4.0}) {
    std::vector<double> constants;
    for (int k = 128; k <= 8192; k *= 2) {
      double sup = 0.0;
      for (double t = 0.0; t <= M; t += 0.002) sup = std::max(sup, std::fabs(hermite_1d(k, t)));
      constants.push_back(sup * std::pow(k, 0.25));
    }
    const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
    CHECK(*hi / *lo < 2.0);
  }
}

TEST_CASE("asymptotic form agrees within its error term") {
  const int k = 500;
  const double x = 0.3;
  const double diff = std::fabs(hermite_1d(k, x) - hermite_asymptotic(k, x));
  CHECK(diff <= hermite_asymptotic_error_scale(k, x));
  CHECK(hermite_asymptotic_error_scale(k, x) < 2e-4);

  const double N = 2.0 * 100 + 1;
  const double at_zero = std::sqrt(2.0 / std::numbers::pi) * std::pow(N, -0.25) * std::cos((N * std::numbers::pi - std::numbers::pi) / 4);
  CHECK(hermite_asymptotic(100, 0.0) == doctest::Approx(at_zero).epsilon(1e-13));

  const double edge = std::sqrt(1001.0) - std::pow(1001.0, -1.0 / 6.0);
  CHECK_THROWS_AS(hermite_asymptotic(k, edge + 0.01), std::domain_error);
  CHECK_NOTHROW(hermite_asymptotic(k, edge - 0.01));
}

TEST_CASE("hermite_nd is the tensor product") {
  CHECK(hermite_nd({0, 0}, std::vector<double>{0.0, 0.0}) == doctest::Approx(0.5641896).epsilon(1e-7));
  CHECK(hermite_nd({1, 0}, std::vector<double>{0.0, 3.1}) == 0.0);
  const double v = hermite_nd({2, 3}, std::vector<double>{0.5, -1.2});
  CHECK(v == doctest::Approx(oracle::hermite(2, 0.5) * oracle::hermite(3, -1.2)).epsilon(1e-13));
  CHECK_THROWS(hermite_nd({1, 2}, std::vector<double>{0.0}));
}

TEST_CASE("eigenvalues and multiplicities") {
  CHECK(eigenvalue(MultiIndex::zero(5)) == 5);
  CHECK(eigenvalue({2, 3}) == 12);
  CHECK(eigenlevel(0, 5).multiplicity == 1);
  CHECK(eigenlevel(3, 2).multiplicity == 4);
  CHECK(level_indices(3, 2).size() == 4);
  for (int k = 0; k < 12; ++k) CHECK(eigenlevel(k, 1).multiplicity == 1);
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= 8; ++k) {
      CHECK(level_indices(k, n).size() == level_multiplicity(k, n));
      CHECK(eigenlevel(k, n).eigenvalue == 2 * k + n);
    }
  }
}

TEST_CASE("multi-index validation and ordering") {
  CHECK_THROWS_AS(MultiIndex({1, -1}), std::invalid_argument);
  CHECK_THROWS(MultiIndex(std::vector<int>{}));
  const auto lvl = level_indices(2, 2);
  REQUIRE(lvl.size() == 3);
  CHECK(lvl[0] == MultiIndex{2, 0});
  CHECK(lvl[2] == MultiIndex{0, 2});
  const auto all = indices_up_to(3, 3);
  CHECK(all.size() == 20);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].order() <= all[i].order());
}

TEST_CASE("HermiteTable values, ground row and binary round trip") {
  std::vector<double> nodes{-2.0, -0.5, 0.0, 0.75, 3.0};
  HermiteTable table(40, nodes);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double ground = std::pow(std::numbers::pi, -0.25) * std::exp(-nodes[j] * nodes[j] / 2);
    CHECK(table.value(0, j) == doctest::Approx(ground).epsilon(1e-14));
    CHECK(table.value(37, j) == hermite_1d(37, nodes[j]));
  }
  std::stringstream ss;
  table.save(ss);
  const auto bytes = ss.str();
  std::stringstream in(bytes);
  CHECK(HermiteTable::load(in) == table);
  std::string corrupt = bytes;
  corrupt[corrupt.size() / 2] ^= 0x5a;
  std::stringstream bad(corrupt);
  CHECK_THROWS(HermiteTable::load(bad));
}
