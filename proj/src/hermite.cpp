#include "rieszlab/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hermite_recurrence.hpp"

namespace rieszlab {

double hermite_1d(int k, double t) {
  if (k < 0) throw std::invalid_argument("hermite_1d: negative degree");
  if (!std::isfinite(t)) throw std::invalid_argument("hermite_1d: non-finite argument");
  double result = 0.0;
  detail::hermite_recurrence(k, t, [&](int j, double v) {
    if (j == k) result = v;
  });
  return result;
}

void hermite_upto(int K, double t, std::span<double> out) {
  if (K < 0) throw std::invalid_argument("hermite_upto: negative degree");
  if (out.size() != static_cast<std::size_t>(K) + 1) {
    throw std::invalid_argument("hermite_upto: output span must hold K+1 values");
  }
  if (!std::isfinite(t)) throw std::invalid_argument("hermite_upto: non-finite argument");
  detail::hermite_recurrence(K, t, [&](int j, double v) { out[static_cast<std::size_t>(j)] = v; });
}

double hermite_nd(const MultiIndex& mu, std::span<const double> x) {
  if (static_cast<std::size_t>(mu.dim()) != x.size()) {
    throw std::invalid_argument("hermite_nd: dimension mismatch (index has " +
                                std::to_string(mu.dim()) + ", point has " +
                                std::to_string(x.size()) + ")");
  }
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) v *= hermite_1d(mu[i], x[i]);
  return v;
}

double hermite_asymptotic(int k, double x) {
  if (k < 0) throw std::invalid_argument("hermite_asymptotic: negative degree");
  const double N = 2.0 * k + 1.0;
  const double upper = std::sqrt(N) - std::pow(N, -1.0 / 6.0);
  if (!(x >= 0.0) || x > upper) {
    throw std::domain_error("hermite_asymptotic: x outside [0, sqrt(N) - N^{-1/6}]");
  }
  const double theta = std::acos(x / std::sqrt(N));
  const double phase = (N * (2.0 * theta - std::sin(2.0 * theta)) - std::numbers::pi) / 4.0;
  return std::sqrt(2.0 / std::numbers::pi) * std::pow(N - x * x, -0.25) * std::cos(phase);
}

double hermite_asymptotic_error_scale(int k, double x) {
  const double N = 2.0 * k + 1.0;
  return std::sqrt(N) * std::pow(N - x * x, -1.75);
}

std::int64_t eigenvalue(const MultiIndex& mu) {
  return 2 * static_cast<std::int64_t>(mu.order()) + mu.dim();
}

Eigenlevel eigenlevel(int k, int n) {
  return Eigenlevel{k, n, 2 * static_cast<std::int64_t>(k) + n, level_multiplicity(k, n)};
}

}  // namespace rieszlab
