#pragma once

#include <cmath>
#include <numbers>

namespace rieszlab::detail {

// Normalized Hermite recurrence with the Gaussian factor kept as a binary
// exponent. The running pair (p_{j-1}, p_j) holds h_j / 2^exponent where the
// exponent absorbs both e^{-t^2/2} and any rescaling, so values stay in
// [2^-600, 2^600] while the emitted h_j may legitimately underflow.
template <class Sink>
void hermite_recurrence(int K, double t, Sink&& emit) {
  constexpr double kRescale = 0x1p600;
  constexpr double kRescaleInv = 0x1p-600;
  const double inv_pi_quarter = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));

  // e^{-t^2/2} = mant * 2^exp2 with mant in [1, 2).
  const double log2_gauss = -0.5 * t * t / std::numbers::ln2;
  const double whole = std::floor(log2_gauss);
  long exp2 = static_cast<long>(whole);
  const double mant = std::exp2(log2_gauss - whole);

  auto factor_for = [&](long e) {
    return e < -1100 ? 0.0 : std::ldexp(mant, static_cast<int>(e));
  };

  double prev = 0.0;
  double cur = inv_pi_quarter;
  double factor = factor_for(exp2);
  emit(0, cur * factor);
  if (K == 0) return;

  double next = std::numbers::sqrt2 * t * cur;
  prev = cur;
  cur = next;
  emit(1, cur * factor);

  for (int j = 1; j < K; ++j) {
    const double jd = static_cast<double>(j);
    next = t * std::sqrt(2.0 / (jd + 1.0)) * cur - std::sqrt(jd / (jd + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kRescale) {
      cur *= kRescaleInv;
      prev *= kRescaleInv;
      exp2 += 600;
      factor = factor_for(exp2);
    }
    emit(j + 1, cur * factor);
  }
}

}  // namespace rieszlab::detail
