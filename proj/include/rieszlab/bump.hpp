#pragma once

#include <functional>

namespace rieszlab {

/// A scalar profile with its derivative and a closed support interval.
struct SmoothProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double support_lo = 0.0;
  double support_hi = 0.0;

  double operator()(double s) const { return value(s); }
};

/// e * exp(-1 / (1 - s^2)) for |s| < 1, else 0. Peak value 1 at s = 0.
double mollifier(double s);
double mollifier_derivative(double s);

/// Mollifier rescaled to [center - half_width, center + half_width].
SmoothProfile bump_profile(double center, double half_width);

/// The fixed bump used by the square function: supported in [1/8, 1/2],
/// peak 1 at 5/16.
SmoothProfile square_function_bump();

/// Smooth step: 1 on [0, 1.05], 0 on [1.45, inf), C-infinity in between.
double smooth_step(double s);
double smooth_step_derivative(double s);

/// Littlewood-Paley piece phi(s) = step(s/2) - step(s), supported in
/// [1.05, 2.9]. For s > 0.725 the pieces phi(2^-k s), k >= -1, sum to 1.
SmoothProfile littlewood_paley_piece();

}  // namespace rieszlab
