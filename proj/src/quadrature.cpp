#include "rieszlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rieszlab/error.hpp"
#include "rieszlab/hermite.hpp"

namespace rieszlab {

namespace {

GaussLegendre compute_gauss_legendre(int m) {
  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(m));
  gl.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < (m + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_m.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) { p1 = x; p0 = 1.0; }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // Final derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= m; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    if (m == 1) { p1 = x; p0 = 1.0; }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(m - 1 - i);
    gl.nodes[lo] = -x;
    gl.nodes[hi] = x;
    gl.weights[lo] = w;
    gl.weights[hi] = w;
  }
  if (m % 2 == 1) gl.nodes[static_cast<std::size_t>(m / 2)] = 0.0;
  return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  if (order < 1 || order > 512) throw std::invalid_argument("gauss_legendre: order must be in [1, 512]");
  static std::mutex mutex;
  static std::map<int, GaussLegendre> memo;
  std::lock_guard lock(mutex);
  auto it = memo.find(order);
  if (it == memo.end()) it = memo.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

NodesWeights composite_gauss_legendre(std::span<const double> breakpoints, int order) {
  if (breakpoints.size() < 2) throw std::invalid_argument("composite_gauss_legendre: need two breakpoints");
  const auto& gl = gauss_legendre(order);
  NodesWeights out;
  out.nodes.reserve((breakpoints.size() - 1) * gl.nodes.size());
  out.weights.reserve(out.nodes.capacity());
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double a = breakpoints[p];
    const double b = breakpoints[p + 1];
    if (!(b > a)) throw std::invalid_argument("composite_gauss_legendre: breakpoints must increase");
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      out.nodes.push_back(mid + half * gl.nodes[i]);
      out.weights.push_back(half * gl.weights[i]);
    }
  }
  return out;
}

NodesWeights composite_gauss_legendre(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels must be positive");
  std::vector<double> br(static_cast<std::size_t>(panels) + 1);
  for (int p = 0; p <= panels; ++p) br[static_cast<std::size_t>(p)] = a + (b - a) * p / panels;
  br.back() = b;
  return composite_gauss_legendre(br, order);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                          double abs_tol, int order, int max_doublings) {
  if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: need a <= b");
  if (a == b) return 0.0;
  const auto& gl = gauss_legendre(order);
  auto eval = [&](int panels) {
    double s = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * h;
      double ps = 0.0;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) ps += gl.weights[i] * f(mid + 0.5 * h * gl.nodes[i]);
      s += 0.5 * h * ps;
    }
    return s;
  };
  double prev = eval(1);
  for (int d = 1, panels = 2; d <= max_doublings; ++d, panels *= 2) {
    const double cur = eval(panels);
    if (std::fabs(cur - prev) <= rel_tol * std::fabs(cur) + abs_tol) return cur;
    prev = cur;
  }
  throw NumericalError("integrate_adaptive: no convergence on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
}

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights,
                               double half_width, int design_degree, double weight_exponent)
    : nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      half_width_(half_width),
      design_degree_(design_degree),
      weight_exponent_(weight_exponent) {
  if (nodes_.size() != weights_.size()) throw std::invalid_argument("QuadratureRule: size mismatch");
}

double hermite_half_width(int K, double tail_tolerance) {
  const double N = 2.0 * K + 1.0;
  double x = std::sqrt(N);
  while (std::fabs(hermite_1d(K, x)) >= tail_tolerance) x += 0.05;
  return x + 0.5;
}

QuadratureRule build_rule(int K, double weight_exponent, const RuleOptions& options) {
  if (K < 0) throw std::invalid_argument("build_rule: negative degree");
  if (K > kMaxRuleDegree) {
    throw CapacityError("build_rule: degree " + std::to_string(K) + " exceeds the configured maximum " +
                        std::to_string(kMaxRuleDegree));
  }
  const double N = 2.0 * K + 1.0;
  const double L = hermite_half_width(K, options.tail_tolerance);
  const double width = std::min(1.0, options.density / std::sqrt(N));
  const int panels = static_cast<int>(std::ceil(L / width));
  std::vector<double> br;
  br.push_back(0.0);
  for (int j = options.origin_grading; j >= 1; --j) br.push_back(std::ldexp(L / panels, -j));
  for (int p = 1; p <= panels; ++p) br.push_back(L * p / panels);
  auto half = composite_gauss_legendre(br, options.panel_order);

  std::vector<double> nodes(2 * half.nodes.size());
  std::vector<double> weights(nodes.size());
  const std::size_t m = half.nodes.size();
  for (std::size_t i = 0; i < m; ++i) {
    nodes[m - 1 - i] = -half.nodes[i];
    weights[m - 1 - i] = half.weights[i];
    nodes[m + i] = half.nodes[i];
    weights[m + i] = half.weights[i];
  }
  return QuadratureRule(std::move(nodes), std::move(weights), L, K, weight_exponent);
}

NodesWeights build_interval_rule(double a, double b, int K, const RuleOptions& options) {
  if (!(b > a)) throw std::invalid_argument("build_interval_rule: empty interval");
  const double width = std::min(1.0, options.density / std::sqrt(2.0 * K + 1.0));
  std::vector<double> br;
  auto add_range = [&](double lo, double hi) {
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    for (int p = 0; p < panels; ++p) br.push_back(lo + (hi - lo) * p / panels);
  };
  if (a < 0.0 && b > 0.0) {
    add_range(a, 0.0);
    add_range(0.0, b);
  } else {
    add_range(a, b);
  }
  br.push_back(b);
  return composite_gauss_legendre(br, options.panel_order);
}

}  // namespace rieszlab
