#include "rieszlab/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rieszlab/error.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

namespace {

// Normalized polynomial part q_j = (j! Gamma(a+1) / Gamma(j+a+1))^{1/2} L_j^a(x)
// for j = 0..K. emit(j, v, e) receives q_j = v * 2^e.
template <class Sink>
void laguerre_poly_recurrence(int K, double a, double x, Sink&& emit) {
  constexpr double kRescale = 0x1p600;
  constexpr double kRescaleInv = 0x1p-600;
  long exp2 = 0;
  double prev = 0.0;
  double cur = 1.0;
  emit(0, cur, exp2);
  if (K == 0) return;
  double next = (1.0 + a - x) / std::sqrt(1.0 + a);
  prev = cur;
  cur = next;
  emit(1, cur, exp2);
  for (int j = 1; j < K; ++j) {
    const double jd = j;
    next = ((2.0 * jd + a + 1.0 - x) * cur - std::sqrt(jd * (jd + a)) * prev) /
           std::sqrt((jd + 1.0) * (jd + a + 1.0));
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kRescale) {
      cur *= kRescaleInv;
      prev *= kRescaleInv;
      exp2 += 600;
    }
    emit(j + 1, cur, exp2);
  }
}

// v * 2^e * exp(log_factor) without intermediate overflow.
double scaled(double v, long e, double log_factor) {
  if (v == 0.0) return 0.0;
  const double log2_total = std::log2(std::fabs(v)) + static_cast<double>(e) + log_factor / std::numbers::ln2;
  const double mag = std::exp2(log2_total);
  return v < 0.0 ? -mag : mag;
}

void check_type(double a) {
  if (!(a > -1.0) || !std::isfinite(a)) throw std::invalid_argument("laguerre: type must exceed -1");
}

// log of e^{-x/2} x^{a/2} / sqrt(Gamma(a+1)) for x > 0.
double laguerre_log_factor(double a, double x) {
  return -0.5 * x + 0.5 * a * std::log(x) - 0.5 * std::lgamma(a + 1.0);
}

// Value at x = 0, where only the x^{a/2} factor matters.
double laguerre_at_zero(double a, double q) {
  if (a > 0.0) return 0.0;
  if (a == 0.0) return q;
  return std::copysign(std::numeric_limits<double>::infinity(), q);
}

double frak_sign_part(int k, int n, double r) {
  const double a = 0.5 * n - 1.0;
  double v = 0.0;
  laguerre_poly_recurrence(k, a, r * r, [&](int j, double q, long) {
    if (j == k) v = q;
  });
  return v;
}

}  // namespace

double laguerre_fn(int k, double a, double x) {
  if (k < 0) throw std::invalid_argument("laguerre_fn: negative degree");
  check_type(a);
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("laguerre_fn: need finite x >= 0");
  double v = 0.0;
  long e = 0;
  laguerre_poly_recurrence(k, a, x, [&](int j, double q, long ex) {
    if (j == k) {
      v = q;
      e = ex;
    }
  });
  if (x == 0.0) return laguerre_at_zero(a, v);
  return scaled(v, e, laguerre_log_factor(a, x));
}

void laguerre_fn_upto(int K, double a, double x, std::span<double> out) {
  if (K < 0) throw std::invalid_argument("laguerre_fn_upto: negative degree");
  check_type(a);
  if (out.size() != static_cast<std::size_t>(K) + 1) throw std::invalid_argument("laguerre_fn_upto: output size must be K+1");
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("laguerre_fn_upto: need finite x >= 0");
  const double lf = x > 0.0 ? laguerre_log_factor(a, x) : 0.0;
  laguerre_poly_recurrence(K, a, x, [&](int j, double q, long e) {
    out[static_cast<std::size_t>(j)] = x == 0.0 ? laguerre_at_zero(a, q) : scaled(q, e, lf);
  });
}

double laguerre_dk(int k, int n) {
  if (k < 0 || n < 1) throw std::invalid_argument("laguerre_dk: need k >= 0, n >= 1");
  return std::exp(0.5 * (std::lgamma(k + 0.5 * n) - std::lgamma(k + 1.0)));
}

double frak_laguerre(int k, int n, double r) {
  if (k < 0 || n < 1) throw std::invalid_argument("frak_laguerre: need k >= 0, n >= 1");
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("frak_laguerre: need finite r >= 0");
  const double a = 0.5 * n - 1.0;
  double v = 0.0;
  long e = 0;
  laguerre_poly_recurrence(k, a, r * r, [&](int j, double q, long ex) {
    if (j == k) {
      v = q;
      e = ex;
    }
  });
  // frak = q_k(r^2) D_k e^{-r^2/2} / sqrt(Gamma(a+1)).
  const double lf = -0.5 * r * r + 0.5 * (std::lgamma(k + 0.5 * n) - std::lgamma(k + 1.0)) -
                    0.5 * std::lgamma(a + 1.0);
  return scaled(v, e, lf);
}

double laguerre_radius(int k, double a) {
  const double nu = 4.0 * k + 2.0 * a + 2.0;
  return std::sqrt(nu) + 12.0 * std::pow(nu, -1.0 / 6.0) + 4.0;
}

RadialRule radial_rule(int k, double a, int panel_order) {
  const double nu = 4.0 * k + 2.0 * a + 2.0;
  const double R = laguerre_radius(k, a);
  const double width = std::min(1.0, 12.0 / std::sqrt(nu));
  const int panels = static_cast<int>(std::ceil(R / width));
  auto nw = composite_gauss_legendre(0.0, R, panels, panel_order);
  return {std::move(nw.nodes), std::move(nw.weights)};
}

std::pair<double, double> laguerre_weighted_moments(int j, double a, const std::function<double(double)>& w1,
                                                    const std::function<double(double)>& w2) {
  if (j < 0) throw std::invalid_argument("laguerre_weighted_moments: negative degree");
  check_type(a);
  const auto rule = radial_rule(j, a);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    const double v = laguerre_fn(j, a, r * r);
    const double base = rule.weights[i] * v * v * 2.0 * r;
    s1 += base * w1(r);
    if (w2) s2 += base * w2(r);
  }
  return {s1, s2};
}

double laguerre_weighted_moment(int j, double a, const std::function<double(double)>& w) {
  return laguerre_weighted_moments(j, a, w, nullptr).first;
}

double RadialProjection::operator()(double r) const { return coefficient * frak_laguerre(k, n, r); }

RadialProjection radial_project(const std::function<double(double)>& f0, int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("radial_project: need n >= 1, k >= 0");
  const double a = 0.5 * n - 1.0;
  const auto rule = radial_rule(k, a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    const double fv = f0(r);
    if (!std::isfinite(fv)) throw NumericalError("radial_project: profile is not finite at r = " + std::to_string(r));
    s += rule.weights[i] * fv * frak_laguerre(k, n, r) * std::pow(r, n - 1);
  }
  if (!std::isfinite(s)) throw NumericalError("radial_project: divergent radial integral");
  const double dk = laguerre_dk(k, n);
  return {k, n, 2.0 * s / (dk * dk)};
}

std::vector<double> frak_laguerre_zeros(int k, int n) {
  if (k < 0 || n < 1) throw std::invalid_argument("frak_laguerre_zeros: need k >= 0, n >= 1");
  std::vector<double> zeros;
  if (k == 0) return zeros;
  const double a = 0.5 * n - 1.0;
  const double nu = 4.0 * k + 2.0 * a + 2.0;
  const double hi = std::sqrt(nu) + 3.0;
  for (int refine = 10; refine <= 640; refine *= 2) {
    zeros.clear();
    const double step = std::numbers::pi / (refine * std::sqrt(nu));
    double r0 = step * 0.5;
    double v0 = frak_sign_part(k, n, r0);
    for (double r1 = r0 + step; r1 <= hi; r1 += step) {
      const double v1 = frak_sign_part(k, n, r1);
      if ((v0 < 0.0) != (v1 < 0.0)) {
        double lo = r0, up = r1;
        const bool lo_neg = v0 < 0.0;
        for (int it = 0; it < 200 && up - lo > 4e-16 * up; ++it) {
          const double mid = 0.5 * (lo + up);
          if ((frak_sign_part(k, n, mid) < 0.0) == lo_neg) lo = mid; else up = mid;
        }
        zeros.push_back(0.5 * (lo + up));
      }
      r0 = r1;
      v0 = v1;
    }
    if (static_cast<int>(zeros.size()) == k) return zeros;
  }
  throw NumericalError("frak_laguerre_zeros: found " + std::to_string(zeros.size()) + " zeros, expected " +
                       std::to_string(k));
}

double frak_zero_panel_integral(int k, int n, const std::function<double(double)>& g) {
  const double a = 0.5 * n - 1.0;
  const double nu = 4.0 * k + 2.0 * a + 2.0;
  const double R = laguerre_radius(k, a);
  const double width = std::min(1.0, 12.0 / std::sqrt(nu));
  std::vector<double> br{0.0};
  for (double z : frak_laguerre_zeros(k, n)) {
    const double lo = br.back();
    const double mid = 0.5 * (lo + z);
    br.push_back(mid);
    br.push_back(z);
  }
  const double last = br.back();
  const int tail = std::max(1, static_cast<int>(std::ceil((R - last) / width)));
  for (int p = 1; p <= tail; ++p) br.push_back(last + (R - last) * p / tail);
  const auto nw = composite_gauss_legendre(br, 32);
  double sum = 0.0;
  for (std::size_t i = 0; i < nw.nodes.size(); ++i) {
    const double r = nw.nodes[i];
    sum += nw.weights[i] * g(r) * std::pow(r, n - 1);
  }
  return sum;
}

double radial_abs_power_integral(int k, int n, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("radial_abs_power_integral: exponent must be positive");
  return frak_zero_panel_integral(k, n, [&](double r) { return std::pow(std::fabs(frak_laguerre(k, n, r)), s); });
}

double laguerre_norm(int k, double q, int n) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw std::invalid_argument("laguerre_norm: need finite q >= 1");
  return std::pow(radial_abs_power_integral(k, n, q), 1.0 / q);
}

double laguerre_asymptotic(int k, double a, double r) {
  if (k < 0) throw std::invalid_argument("laguerre_asymptotic: negative degree");
  check_type(a);
  const double nu = 4.0 * k + 2.0 * a + 2.0;
  if (!(r >= 1.0 / nu && r <= 1.0)) {
    throw std::domain_error("laguerre_asymptotic: r must lie in [1/nu, 1]");
  }
  const double z = nu * r;
  return std::sqrt(2.0 / std::numbers::pi) * std::pow(z, -0.25) *
         std::cos(std::sqrt(z) - a * std::numbers::pi / 2.0 - std::numbers::pi / 4.0);
}

double laguerre_asymptotic_error_scale(int k, double a, double r) {
  const double nu = 4.0 * k + 2.0 * a + 2.0;
  return std::pow(nu * r, -0.75);
}

}  // namespace rieszlab
