#pragma once

#include <span>
#include <vector>

#include "rieszlab/scaling.hpp"

namespace rieszlab {

// ---------------------------------------------------------------------------
// Cosine-phase sets

/// Measure of {r in [lo, hi] : |cos(sqrt(nu) r - a pi/2 - pi/4)| >= sqrt(2)/2},
/// nu = 4k + 2a + 2. The phase is linear in r, so the set is a finite union
/// of intervals whose ends are found in closed form.
double cosine_set_measure(int k, double a, double lo = 0.5, double hi = 1.0);

struct HermiteCosineOptions {
  /// Count |cos| >= sqrt(2)/2 instead of cos >= sqrt(2)/2.
  bool absolute = false;
  /// Use N(2 theta - sin theta) in the phase instead of N(2 theta - sin 2 theta).
  bool literal_sin_theta = false;
};

/// Measure of {x in [sqrt(N)/2, sqrt(N)/sqrt(2)] : cos((N(2 theta - sin 2theta) - pi)/4) >= sqrt(2)/2},
/// theta = arccos(x / sqrt(N)). The phase is monotone in x; interval ends are
/// located by bisection on x.
double hermite_cosine_set_measure(int N, const HermiteCosineOptions& options = {});

// ---------------------------------------------------------------------------
// Radial counterexample f_k = sign(L) |L|^{1/(p-1)}, L = frak_laguerre(k, n, .)

struct FkReport {
  int k = 0;
  int n = 1;
  double p = 4.0;
  /// int f_k L r^{n-1} dr.
  double pairing = 0.0;
  /// ||L||_{p'}^{p'}, integrated separately from the pairing.
  double lq_power = 0.0;
  /// ||f_k||_p.
  double fk_norm = 0.0;
  /// D_k^{-1} k^{-1/4} pairing / ||f_k||_p  (= D_k^{-1} k^{-1/4} ||L||_{p'}).
  double quantity = 0.0;
  /// n(1/2 - 1/p)/2 - 1/4.
  double reference_exponent = 0.0;
};

/// Requires p > 2 and k >= 1.
FkReport counterexample_fk(double p, int n, int k);

// ---------------------------------------------------------------------------
// Weighted counterexample g_k = h_k(x_1) h_0(x_2)...h_0(x_n), G_k = g_k (1+|x|)^{-alpha}

enum class GkRoute {
  /// Polar decomposition for n <= 2, tensor Gram otherwise.
  automatic,
  /// Angular modes m = -k, -k+2, ..., k with weights 2^{-k} C(k, (k+m)/2);
  /// each mode is a single Laguerre function. n <= 2 only.
  polar,
  /// Level Gram matrices on the tensor grid (small k).
  tensor,
};

struct GkReport {
  int k = 0;
  int n = 1;
  double alpha = 0.0;
  /// ||chi_k(H) G_k||_2^2.
  double l2_sq = 0.0;
  /// ||chi_k(H) G_k||^2 in L2((1+|x|)^{alpha}).
  double weighted_sq = 0.0;
  /// <G_k, g_k> = <G_k, Phi_(k,0,...,0)> = ||g_k||^2 in L2((1+|x|)^{-alpha}).
  double pairing = 0.0;
  /// (weighted_sq / l2_sq)^{1/2}.
  double ratio = 0.0;
};

GkReport counterexample_gk(int k, double alpha, int n, GkRoute route = GkRoute::automatic);

/// Necessary Riesz order implied by ratios over a k sweep:
/// slope of ratio vs k minus min(alpha, 1)/4. The fit is returned in `fit`.
double implied_lambda(std::span<const GkReport> reports, ScalingReport* fit = nullptr);

}  // namespace rieszlab
