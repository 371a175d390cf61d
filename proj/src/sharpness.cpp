#include "rieszlab/sharpness.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "rieszlab/laguerre.hpp"
#include "rieszlab/parallel.hpp"
#include "rieszlab/weighted.hpp"

namespace rieszlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Measure of {phase in [u0, u1] : distance to center + period Z <= half}.
double periodic_measure(double u0, double u1, double period, double center, double half) {
  if (u1 < u0) std::swap(u0, u1);
  double total = 0.0;
  const auto first = static_cast<long>(std::floor((u0 - center - half) / period));
  const auto last = static_cast<long>(std::ceil((u1 - center + half) / period));
  for (long m = first; m <= last; ++m) {
    const double c = center + m * period;
    total += std::max(0.0, std::min(u1, c + half) - std::max(u0, c - half));
  }
  return total;
}

// Phase-window ends [c - half, c + half] pulled back through a monotone
// phase on [a, b] by bisection.
double pullback_measure(const std::function<double(double)>& phase, double a, double b, double period,
                        double center, double half) {
  const double pa = phase(a), pb = phase(b);
  const bool increasing = pb > pa;
  auto inverse = [&](double target) {
    double lo = a, hi = b;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((phase(mid) < target) == increasing) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double u0 = std::min(pa, pb), u1 = std::max(pa, pb);
  double total = 0.0;
  const auto first = static_cast<long>(std::floor((u0 - center - half) / period));
  const auto last = static_cast<long>(std::ceil((u1 - center + half) / period));
  for (long m = first; m <= last; ++m) {
    const double c = center + m * period;
    const double lo = std::max(u0, c - half), hi = std::min(u1, c + half);
    if (hi <= lo) continue;
    total += std::fabs(inverse(hi) - inverse(lo));
  }
  return total;
}

double log_binomial(int n, int r) {
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

}  // namespace

double cosine_set_measure(int k, double a, double lo, double hi) {
  if (k < 0) throw std::invalid_argument("cosine_set_measure: negative degree");
  if (!(a > -1.0)) throw std::invalid_argument("cosine_set_measure: type must exceed -1");
  if (!(hi >= lo)) throw std::invalid_argument("cosine_set_measure: empty interval");
  const double s = std::sqrt(4.0 * k + 2.0 * a + 2.0);
  const double shift = a * kPi / 2.0 + kPi / 4.0;
  // |cos u| >= sqrt(2)/2  <=>  u within pi/4 of pi Z.
  return periodic_measure(s * lo - shift, s * hi - shift, kPi, 0.0, kPi / 4.0) / s;
}

double hermite_cosine_set_measure(int N, const HermiteCosineOptions& options) {
  if (N < 1) throw std::invalid_argument("hermite_cosine_set_measure: N must be >= 1");
  const double rN = std::sqrt(static_cast<double>(N));
  auto phase = [&](double x) {
    const double th = std::acos(std::clamp(x / rN, -1.0, 1.0));
    const double s = options.literal_sin_theta ? std::sin(th) : std::sin(2.0 * th);
    return (N * (2.0 * th - s) - kPi) / 4.0;
  };
  const double a = rN / 2.0, b = rN / std::numbers::sqrt2;
  if (options.absolute) return pullback_measure(phase, a, b, kPi, 0.0, kPi / 4.0);
  return pullback_measure(phase, a, b, 2.0 * kPi, 0.0, kPi / 4.0);
}

FkReport counterexample_fk(double p, int n, int k) {
  if (!(p > 2.0) || !std::isfinite(p)) throw std::invalid_argument("counterexample_fk: need finite p > 2");
  if (n < 1 || k < 1) throw std::invalid_argument("counterexample_fk: need n >= 1, k >= 1");
  const double pp = p / (p - 1.0);
  auto fk = [&](double r) {
    const double L = frak_laguerre(k, n, r);
    return std::copysign(std::pow(std::fabs(L), 1.0 / (p - 1.0)), L);
  };
  FkReport rep;
  rep.k = k;
  rep.n = n;
  rep.p = p;
  rep.pairing = frak_zero_panel_integral(k, n, [&](double r) { return fk(r) * frak_laguerre(k, n, r); });
  rep.lq_power = radial_abs_power_integral(k, n, pp);
  rep.fk_norm = std::pow(frak_zero_panel_integral(k, n, [&](double r) { return std::pow(std::fabs(fk(r)), p); }), 1.0 / p);
  rep.quantity = rep.pairing / rep.fk_norm / (laguerre_dk(k, n) * std::pow(static_cast<double>(k), 0.25));
  rep.reference_exponent = n * (0.5 - 1.0 / p) / 2.0 - 0.25;
  return rep;
}

GkReport counterexample_gk(int k, double alpha, int n, GkRoute route) {
  if (k < 0 || n < 1) throw std::invalid_argument("counterexample_gk: need k >= 0, n >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("counterexample_gk: alpha must be >= 0");
  if (route == GkRoute::automatic) route = n <= 2 ? GkRoute::polar : GkRoute::tensor;
  if (route == GkRoute::polar && n > 2) throw std::invalid_argument("counterexample_gk: polar route needs n <= 2");
  GkReport rep;
  rep.k = k;
  rep.n = n;
  rep.alpha = alpha;
  if (route == GkRoute::polar) {
    if (n == 1) {
      const double wm = hermite_weighted_moment(k, alpha, -1);
      const double wp = hermite_weighted_moment(k, alpha, 1);
      rep.pairing = wm;
      rep.l2_sq = wm * wm;
      rep.weighted_sq = wm * wm * wp;
    } else {
      // Modes m >= 0; m and -m share the radial function.
      std::vector<int> ms;
      for (int m = k % 2; m <= k; m += 2) ms.push_back(m);
      std::vector<double> pair(ms.size()), l2(ms.size()), wt(ms.size());
      parallel_for(ms.size(), [&](std::size_t i) {
        const int m = ms[i];
        const double pm = std::exp(log_binomial(k, (k + m) / 2) - k * std::numbers::ln2) * (m == 0 ? 1.0 : 2.0);
        const auto [wm, wp] = laguerre_weighted_moments(
            (k - m) / 2, m, [alpha](double r) { return std::pow(1.0 + r, -alpha); },
            [alpha](double r) { return std::pow(1.0 + r, alpha); });
        pair[i] = pm * wm;
        l2[i] = pm * wm * wm;
        wt[i] = pm * wm * wm * wp;
      });
      for (std::size_t i = 0; i < ms.size(); ++i) {
        rep.pairing += pair[i];
        rep.l2_sq += l2[i];
        rep.weighted_sq += wt[i];
      }
    }
  } else {
    // chi_k(H) G_k has coefficients v = Gm e_0, where e_0 picks (k, 0, ..., 0).
    const Eigen::MatrixXd Gm = level_weighted_gram(k, n, -alpha);
    const Eigen::MatrixXd Gp = level_weighted_gram(k, n, alpha);
    const Eigen::VectorXd v = Gm.col(0);
    rep.pairing = v(0);
    rep.l2_sq = v.squaredNorm();
    rep.weighted_sq = v.dot(Gp * v);
  }
  rep.ratio = std::sqrt(rep.weighted_sq / rep.l2_sq);
  return rep;
}

double implied_lambda(std::span<const GkReport> reports, ScalingReport* fit) {
  if (reports.empty()) throw std::invalid_argument("implied_lambda: no reports");
  std::vector<ScalingSample> s;
  for (const auto& r : reports) s.push_back({static_cast<double>(r.k), r.ratio});
  auto report = fit_slope(s);
  const double alpha = reports.front().alpha;
  if (fit) *fit = report;
  return report.slope - std::min(alpha, 1.0) / 4.0;
}

}  // namespace rieszlab
