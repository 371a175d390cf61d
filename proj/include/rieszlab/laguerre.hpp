#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rieszlab {

/// Normalized Laguerre function
///   L_k^a(x) (Gamma(k+1)/Gamma(k+a+1))^{1/2} e^{-x/2} x^{a/2},
/// orthonormal in L2(0, inf) for fixed a > -1. Evaluated by a normalized
/// three-term recurrence with the exponential factor carried as a binary
/// exponent, as for the Hermite functions.
double laguerre_fn(int k, double a, double x);

/// Values for degrees 0..K at x. out.size() must be K+1.
void laguerre_fn_upto(int K, double a, double x, std::span<double> out);

/// D_k = (Gamma(k + n/2) / Gamma(k + 1))^{1/2}.
double laguerre_dk(int k, int n);

/// Radial profile L_k^{n/2-1}(r^2) e^{-r^2/2} of the level-2k radial
/// eigenfunction in dimension n. Equals D_k times the normalized Laguerre
/// function of type n/2-1 at r^2, times r^{1-n/2}.
double frak_laguerre(int k, int n, double r);

/// Upper radius beyond which the level-k radial functions of type a are
/// negligible: sqrt(nu) + 12 nu^{-1/6} + 4, nu = 4k + 2a + 2.
double laguerre_radius(int k, double a);

/// Composite Gauss-Legendre rule on [0, laguerre_radius] in the radius r,
/// with panels of width about 12 / sqrt(nu).
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
RadialRule radial_rule(int k, double a, int panel_order = 24);

/// Integral over u in (0, inf) of laguerre_fn(j, a, u)^2 w(sqrt(u)), computed
/// in r = sqrt(u). With w(r) = (1 + r)^{-alpha} this is the weighted norm of
/// the level eigenfunctions with angular degree l, a = l + n/2 - 1.
double laguerre_weighted_moment(int j, double a, const std::function<double(double)>& w);

/// Two radial moments sharing one pass over the nodes.
std::pair<double, double> laguerre_weighted_moments(int j, double a, const std::function<double(double)>& w1,
                                                    const std::function<double(double)>& w2);

/// Result of projecting a radial function onto the level-2k radial
/// eigenfunction: P_{2k} f(x) = coefficient * frak_laguerre(k, n, |x|).
struct RadialProjection {
  int k = 0;
  int n = 1;
  double coefficient = 0.0;
  double operator()(double r) const;
};

/// R_k(f0) = (2 Gamma(k+1)/Gamma(k+n/2)) int_0^inf f0(r) frak(r) r^{n-1} dr.
RadialProjection radial_project(const std::function<double(double)>& f0, int n, int k);

/// Zeros of frak_laguerre(k, n, .) in (0, inf), increasing; exactly k of them.
std::vector<double> frak_laguerre_zeros(int k, int n);

/// int_0^inf g(r) r^{n-1} dr on panels broken at the zeros of
/// frak_laguerre(k, n, .), for integrands that are smooth between them.
double frak_zero_panel_integral(int k, int n, const std::function<double(double)>& g);

/// int_0^inf |frak_laguerre(k, n, r)|^s r^{n-1} dr with panel breakpoints at
/// the zeros so the kink of |.|^s never falls inside a panel.
double radial_abs_power_integral(int k, int n, double s);

/// ||frak_laguerre(k, n, .)||_{L^q((0, inf), r^{n-1} dr)}, 1 <= q.
double laguerre_norm(int k, double q, int n);

/// Bessel-regime main term (2/pi)^{1/2} (nu r)^{-1/4} cos((nu r)^{1/2} - a pi/2 - pi/4),
/// nu = 4k + 2a + 2, valid for 1/nu <= r <= 1. Absolute error is
/// O(nu^{-3/4} r^{-3/4}), the relative O(nu^{-1/2} r^{-1/2}) remainder
/// times the envelope.
double laguerre_asymptotic(int k, double a, double r);

/// Scale nu^{-3/4} r^{-3/4} of the remainder above.
double laguerre_asymptotic_error_scale(int k, double a, double r);

}  // namespace rieszlab
