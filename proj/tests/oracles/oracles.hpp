#pragma once

// Independent reference computations for the unit tests. Nothing here uses
// the library's recurrences or quadrature rules.

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

/// h_k(t) from the polynomial definition H_k(t) = k! sum_m (-1)^m (2t)^{k-2m} / (m! (k-2m)!)
/// in 50-digit arithmetic.
inline double hermite(int k, double t) {
  const big x = t;
  big sum = 0;
  for (int m = 0; 2 * m <= k; ++m) {
    big term = boost::multiprecision::pow(2 * x, k - 2 * m) /
               (boost::math::factorial<big>(static_cast<unsigned>(m)) *
                boost::math::factorial<big>(static_cast<unsigned>(k - 2 * m)));
    sum += (m % 2 ? -term : term);
  }
  const big kfact = boost::math::factorial<big>(static_cast<unsigned>(k));
  const big H = kfact * sum;
  const big norm = boost::multiprecision::sqrt(boost::multiprecision::pow(big(2), k) * kfact *
                                               boost::math::constants::root_pi<big>());
  return static_cast<double>(H / norm * boost::multiprecision::exp(-x * x / 2));
}

/// Normalized Laguerre function from the explicit sum
/// L_k^a(x) = sum_i (-1)^i Gamma(k+a+1) / (Gamma(k-i+1) Gamma(a+i+1) i!) x^i.
inline double laguerre(int k, double a, double x) {
  const big X = x, A = a;
  big sum = 0;
  for (int i = 0; i <= k; ++i) {
    big term = boost::math::tgamma(big(k) + A + 1) /
               (boost::math::tgamma(big(k - i + 1)) * boost::math::tgamma(A + i + 1) *
                boost::math::factorial<big>(static_cast<unsigned>(i))) *
               boost::multiprecision::pow(X, i);
    sum += (i % 2 ? -term : term);
  }
  const big scale = boost::multiprecision::sqrt(boost::math::tgamma(big(k + 1)) / boost::math::tgamma(big(k) + A + 1));
  return static_cast<double>(sum * scale * boost::multiprecision::exp(-X / 2) * boost::multiprecision::pow(X, A / 2));
}

/// Adaptive Gauss-Kronrod on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol);
}

/// Trapezoid rule with step h on [-L, L]; spectrally accurate for smooth
/// integrands with Gaussian decay.
inline double trapezoid(const std::function<double(double)>& f, double L, double h) {
  const int m = static_cast<int>(std::ceil(L / h));
  double s = 0.0;
  for (int i = -m; i <= m; ++i) s += f(i * h);
  return s * h;
}

}  // namespace oracle
