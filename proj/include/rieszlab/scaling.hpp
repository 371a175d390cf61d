#pragma once

#include <span>
#include <vector>

namespace rieszlab {

struct ScalingSample {
  double k = 0.0;
  double value = 0.0;
};

/// Least-squares fit of log(value) = intercept + slope log(k).
struct ScalingReport {
  std::vector<ScalingSample> samples;
  double slope = 0.0;
  double intercept = 0.0;
  /// Root mean square of the log residuals.
  double residual = 0.0;
  /// Standard error of the slope (0 when the fit is exact).
  double slope_stderr = 0.0;
  double k_min = 0.0;
  double k_max = 0.0;

  /// |slope - target| <= tolerance.
  bool slope_within(double target, double tolerance) const;
};

/// Requires at least 4 samples, strictly increasing positive k and positive
/// values; throws std::invalid_argument otherwise.
ScalingReport fit_slope(std::span<const ScalingSample> samples);
ScalingReport fit_slope(std::span<const double> k, std::span<const double> values);

}  // namespace rieszlab
