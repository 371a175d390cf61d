#include "rieszlab/bump.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rieszlab {

double mollifier(double s) {
  const double d = 1.0 - s * s;
  if (d <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / d);
}

double mollifier_derivative(double s) {
  const double d = 1.0 - s * s;
  if (d <= 0.0) return 0.0;
  // d/ds exp(1 - 1/d) = exp(1 - 1/d) * (-2s / d^2)
  return std::exp(1.0 - 1.0 / d) * (-2.0 * s / (d * d));
}

SmoothProfile bump_profile(double center, double half_width) {
  if (!(half_width > 0.0) || !std::isfinite(center) || !std::isfinite(half_width)) {
    throw std::invalid_argument("bump_profile: half width must be positive and finite");
  }
  SmoothProfile p;
  p.value = [=](double x) { return mollifier((x - center) / half_width); };
  p.derivative = [=](double x) { return mollifier_derivative((x - center) / half_width) / half_width; };
  p.support_lo = center - half_width;
  p.support_hi = center + half_width;
  return p;
}

SmoothProfile square_function_bump() { return bump_profile(5.0 / 16.0, 3.0 / 16.0); }

namespace {

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double psi_derivative(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

// 0 at t <= 0, 1 at t >= 1.
double transition(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = psi(t), b = psi(1.0 - t);
  return a / (a + b);
}

double transition_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = psi(t), b = psi(1.0 - t);
  const double da = psi_derivative(t), db = -psi_derivative(1.0 - t);
  const double s = a + b;
  return (da * s - a * (da + db)) / (s * s);
}

constexpr double kStepLo = 1.05;
constexpr double kStepHi = 1.45;

}  // namespace

double smooth_step(double s) { return transition((kStepHi - s) / (kStepHi - kStepLo)); }

double smooth_step_derivative(double s) {
  return -transition_derivative((kStepHi - s) / (kStepHi - kStepLo)) / (kStepHi - kStepLo);
}

SmoothProfile littlewood_paley_piece() {
  SmoothProfile p;
  p.value = [](double s) { return smooth_step(0.5 * s) - smooth_step(s); };
  p.derivative = [](double s) { return 0.5 * smooth_step_derivative(0.5 * s) - smooth_step_derivative(s); };
  p.support_lo = kStepLo;
  p.support_hi = 2.0 * kStepHi;
  return p;
}

}  // namespace rieszlab
