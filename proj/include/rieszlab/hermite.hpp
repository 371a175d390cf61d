#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rieszlab/multi_index.hpp"

namespace rieszlab {

/// L2-normalized Hermite function h_k(t) = (2^k k! sqrt(pi))^{-1/2} H_k(t) e^{-t^2/2}.
///
/// Evaluated with the normalized three-term recurrence
///   h_{k+1} = t sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}
/// carrying the Gaussian factor as a separate binary exponent, so no
/// intermediate overflows and the result only underflows when the true
/// value is below the smallest double.
double hermite_1d(int k, double t);

/// Writes h_0(t), ..., h_K(t) into out[0..K]. out.size() must be K+1.
void hermite_upto(int K, double t, std::span<double> out);

/// Tensor Hermite function Phi_mu(x) = prod_i h_{mu_i}(x_i).
double hermite_nd(const MultiIndex& mu, std::span<const double> x);

/// Leading term of the oscillatory-region asymptotic expansion,
///   (2/pi)^{1/2} (N - x^2)^{-1/4} cos((N(2 theta - sin 2theta) - pi) / 4),
/// N = 2k+1, theta = arccos(x / sqrt(N)), valid for 0 <= x <= sqrt(N) - N^{-1/6}.
/// The phase uses sin 2theta (the Plancherel-Rotach form); with sin theta the
/// value at x = 0 would not reduce to cos((N pi - pi) / 4).
/// Absolute error is O(N^{1/2} (N - x^2)^{-7/4}). Only used to validate
/// hermite_1d.
double hermite_asymptotic(int k, double x);

/// Error bound scale N^{1/2} (N - x^2)^{-7/4} of hermite_asymptotic.
double hermite_asymptotic_error_scale(int k, double x);

/// Eigenvalue 2|mu| + n of Phi_mu for the operator -Laplacian + |x|^2.
std::int64_t eigenvalue(const MultiIndex& mu);

struct Eigenlevel {
  int k = 0;
  int n = 1;
  std::int64_t eigenvalue = 1;
  std::uint64_t multiplicity = 1;
};

/// Level k in dimension n: eigenvalue 2k+n with multiplicity C(k+n-1, n-1).
Eigenlevel eigenlevel(int k, int n);

}  // namespace rieszlab
