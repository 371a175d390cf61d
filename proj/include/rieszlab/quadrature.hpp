#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rieszlab {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Order-m Gauss-Legendre rule (Newton iteration on P_m). Results for a
/// given order are memoized.
const GaussLegendre& gauss_legendre(int order);

/// Plain node/weight pair list.
struct NodesWeights {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite Gauss-Legendre rule with one panel between each pair of
/// consecutive breakpoints. Breakpoints must be strictly increasing.
NodesWeights composite_gauss_legendre(std::span<const double> breakpoints, int order);

/// Composite rule on [a, b] split into `panels` equal panels.
NodesWeights composite_gauss_legendre(double a, double b, int panels, int order);

/// int_a^b f by composite Gauss-Legendre, doubling the panel count until
/// successive values differ by at most rel_tol |I| + abs_tol. Throws
/// NumericalError if that does not happen within max_doublings.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-13,
                          double abs_tol = 1e-15, int order = 24, int max_doublings = 14);

struct RuleOptions {
  /// Gauss-Legendre points per panel.
  int panel_order = 24;
  /// Panel width is min(1, density / sqrt(2K+1)); roughly `density` radians
  /// of the fastest product h_j h_k per panel.
  double density = 12.0;
  /// Target for |h_K| at the truncation point.
  double tail_tolerance = 1e-18;
  /// Extra breakpoints w 2^{-j}, j = 1..origin_grading, inside the panels
  /// touching 0. Tensor grids need this for radial weights, whose kink at
  /// the origin is a corner of the panel grid rather than a panel boundary.
  int origin_grading = 0;
};

/// Largest supported design degree for build_rule.
inline constexpr int kMaxRuleDegree = 16384;

/// Symmetric composite Gauss-Legendre rule on [-L, L] for integrals of
/// h_j h_k (1+|x|)^{+-alpha}, j, k <= K.
///
/// x = 0 is always a panel boundary so the kink of the power weight never
/// falls inside a panel. L is the first point beyond sqrt(2K+1) where
/// |h_K| drops below the tail tolerance.
class QuadratureRule {
 public:
  QuadratureRule() = default;
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights, double half_width,
                 int design_degree, double weight_exponent);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double half_width() const noexcept { return half_width_; }
  int design_degree() const noexcept { return design_degree_; }
  double weight_exponent() const noexcept { return weight_exponent_; }

  /// Sum of w_i f(x_i).
  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(nodes_[i]);
    return s;
  }

  friend bool operator==(const QuadratureRule&, const QuadratureRule&) = default;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double half_width_ = 0.0;
  int design_degree_ = -1;
  double weight_exponent_ = 0.0;
};

/// Truncation half-width used by build_rule for design degree K.
double hermite_half_width(int K, double tail_tolerance = 1e-18);

/// Builds the rule for design degree K. `weight_exponent` records the
/// |alpha| the rule is intended for; the panel layout already handles any
/// power weight, so it only enters the metadata and validation.
QuadratureRule build_rule(int K, double weight_exponent = 0.0, const RuleOptions& options = {});

/// Composite rule on [a, b] with panel density suited to degree K
/// (0 becomes a breakpoint when a < 0 < b).
NodesWeights build_interval_rule(double a, double b, int K, const RuleOptions& options = {});

}  // namespace rieszlab
