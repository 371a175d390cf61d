#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rieszlab/multi_index.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

using Complex = std::complex<double>;

/// Tensor product of one 1-D node set in each of n coordinates. Points are
/// ordered row-major: the last coordinate varies fastest.
struct TensorGrid {
  int n = 1;
  std::vector<double> nodes;
  std::vector<double> weights;  // may be empty for synthesis-only grids

  TensorGrid() = default;
  TensorGrid(int dim, std::vector<double> axis_nodes, std::vector<double> axis_weights = {});
  TensorGrid(int dim, const QuadratureRule& rule);

  std::size_t axis_size() const noexcept { return nodes.size(); }
  /// Total number of points, axis_size()^n.
  std::size_t size() const;
  /// Coordinates of the point with flat index `flat`.
  std::vector<double> point(std::size_t flat) const;
};

/// Upper limit on the number of tensor grid points handled in one call.
inline constexpr std::size_t kMaxGridPoints = 60'000'000;

/// Truncated Hermite expansion sum_{|mu| <= K} c(mu) Phi_mu in dimension n.
/// Indices that are not stored have coefficient 0.
class Expansion {
 public:
  using Map = std::map<MultiIndex, Complex>;

  Expansion() = default;
  Expansion(int n, int K);

  int dim() const noexcept { return n_; }
  int truncation() const noexcept { return K_; }

  /// c(mu), 0 when absent. Throws on a dimension mismatch.
  Complex coefficient(const MultiIndex& mu) const;
  /// Stores c(mu); zero values are stored too. Throws when |mu| > K.
  void set(const MultiIndex& mu, Complex value);
  void erase(const MultiIndex& mu) { coeffs_.erase(mu); }
  const Map& coefficients() const noexcept { return coeffs_; }
  Map& coefficients() noexcept { return coeffs_; }

  /// sum |c(mu)|^2, the squared L2 norm of the represented function.
  double norm_squared() const;
  /// Coefficients with |mu| = k only.
  Expansion level(int k) const;
  /// Largest |a(mu) - b(mu)| over the union of stored indices.
  friend double max_coefficient_difference(const Expansion& a, const Expansion& b);

  /// Text form: first line "n K", then one line "mu_1 ... mu_n re im" per
  /// stored coefficient, doubles printed with 17 significant digits.
  void write_text(std::ostream& os) const;
  std::string to_text() const;
  static Expansion read_text(std::istream& is);
  static Expansion from_text(const std::string& text);

  friend bool operator==(const Expansion&, const Expansion&) = default;

 private:
  void check(const MultiIndex& mu) const;
  int n_ = 1;
  int K_ = 0;
  Map coeffs_;
};

using SampleFunction = std::function<Complex(std::span<const double>)>;

/// Coefficients <f, Phi_mu> for |mu| <= K from samples of f on a tensor
/// grid carrying quadrature weights. Uses one GEMM per coordinate.
Expansion analyze_samples(const TensorGrid& grid, std::span<const Complex> samples, int K);
Expansion analyze_samples(const TensorGrid& grid, std::span<const double> samples, int K);

/// Samples f on the tensor grid of `rule` and analyzes. Requires
/// rule.design_degree() >= K.
Expansion analyze(const SampleFunction& f, int n, int K, const QuadratureRule& rule);

/// sum c(mu) Phi_mu(x).
Complex synthesize(const Expansion& e, std::span<const double> x);

/// Values of the expansion at every point of the grid (row-major).
std::vector<Complex> synthesize_grid(const Expansion& e, const TensorGrid& grid);

/// Values at arbitrary points x_i (n = 1 only).
std::vector<Complex> synthesize_1d(const Expansion& e, std::span<const double> xs);

}  // namespace rieszlab
