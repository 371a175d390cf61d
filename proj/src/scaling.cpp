#include "rieszlab/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rieszlab {

bool ScalingReport::slope_within(double target, double tolerance) const {
  return std::fabs(slope - target) <= tolerance;
}

ScalingReport fit_slope(std::span<const ScalingSample> samples) {
  if (samples.size() < 4) throw std::invalid_argument("fit_slope: need at least 4 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].k > 0.0)) throw std::invalid_argument("fit_slope: k must be positive");
    if (!(samples[i].value > 0.0) || !std::isfinite(samples[i].value)) {
      throw std::invalid_argument("fit_slope: non-positive value at k = " + std::to_string(samples[i].k));
    }
    if (i > 0 && !(samples[i].k > samples[i - 1].k)) throw std::invalid_argument("fit_slope: k must increase strictly");
  }
  const double m = static_cast<double>(samples.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& s : samples) {
    sx += std::log(s.k);
    sy += std::log(s.value);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log(s.k) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(s.value) - my);
  }
  ScalingReport r;
  r.samples.assign(samples.begin(), samples.end());
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss = 0.0;
  for (const auto& s : samples) {
    const double e = std::log(s.value) - (r.intercept + r.slope * std::log(s.k));
    ss += e * e;
  }
  r.residual = std::sqrt(ss / m);
  r.slope_stderr = std::sqrt(ss / (m - 2.0) / sxx);
  r.k_min = samples.front().k;
  r.k_max = samples.back().k;
  return r;
}

ScalingReport fit_slope(std::span<const double> k, std::span<const double> values) {
  if (k.size() != values.size()) throw std::invalid_argument("fit_slope: size mismatch");
  std::vector<ScalingSample> s(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) s[i] = {k[i], values[i]};
  return fit_slope(s);
}

}  // namespace rieszlab
