#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rieszlab/expansion.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

/// Weight (1 + |x|)^{sign * alpha} on R^n.
struct WeightSpec {
  double alpha = 0.0;
  int sign = -1;
  int n = 1;

  double exponent() const noexcept { return sign * alpha; }
  /// Weight at radius r = |x|.
  double operator()(double r) const;
  void validate() const;
};

/// (int |f|^2 (1 + |x|)^{sign alpha})^{1/2} for samples on the tensor grid
/// of `rule` in dimension w.n (row-major, last coordinate fastest). The rule
/// must have been built for an exponent of at least alpha.
double weighted_norm(std::span<const Complex> values, const WeightSpec& w, const QuadratureRule& rule);
double weighted_norm(std::span<const double> values, const WeightSpec& w, const QuadratureRule& rule);

/// M_{jk} = int h_j h_k (1 + |x|)^{exponent} dx, j, k <= K.
Eigen::MatrixXd weighted_hermite_gram(int K, double exponent);

/// G_{mu nu} = int Phi_mu Phi_nu (1+|x|)^{exponent} dx over |mu| = |nu| = k,
/// rows and columns in level_indices(k, n) order. Assembled on the tensor
/// grid, so only small k are practical for n >= 3.
Eigen::MatrixXd level_weighted_gram(int k, int n, double exponent);

/// int h_k^2 (1 + |x|)^{sign alpha} dx.
double hermite_weighted_moment(int k, double alpha, int sign);

/// Dense eigenproblems above this dimension throw CapacityError.
inline constexpr std::uint64_t kMaxDenseDimension = 4096;

enum class NormMethod {
  /// Direct moment for n = 1, spherical-harmonic blocks for n >= 2.
  automatic,
  /// Radial weights keep each angular degree l = k, k-2, ... separate; each
  /// block is a single Laguerre moment.
  radial,
  /// Dense Gram matrix over |mu| = |nu| = k on the tensor grid.
  cartesian,
  /// Largest singular value of the adjoint map L2((1+|x|)^{alpha}) -> L2.
  dual_svd,
};

std::string to_string(NormMethod m);

struct OperatorNormEstimate {
  double value = 0.0;
  NormMethod method = NormMethod::automatic;
  /// Dimension of the level-k eigenspace (the Gram matrix size).
  std::uint64_t dimension = 0;
};

/// Norm of the level-k spectral projection from L2 to L2((1+|x|)^{-alpha}):
/// the square root of the largest eigenvalue of
///   G_{mu nu} = int Phi_mu Phi_nu (1+|x|)^{-alpha} dx,  |mu| = |nu| = k.
OperatorNormEstimate band_projection_weighted_norm(int k, int n, double alpha,
                                                   NormMethod method = NormMethod::automatic);

/// All eigenvalues of G (descending, with multiplicity) by the radial block
/// formula or the dense Cartesian Gram.
std::vector<double> band_projection_gram_spectrum(int k, int n, double alpha, NormMethod method);

/// max over unit f of int_{[-M, M]^n} |P_k f|^2. For n >= 2 the box Gram
/// factors into 1-D interval Grams, so it is assembled without an n-D grid.
double local_band_mass(int k, int n, double M);

/// ||(1+|x|)^{2 alpha} f||_2 / ||(1+H)^alpha f||_2.
double sobolev_weight_ratio(const Expansion& f, double alpha);

struct SupNormResult {
  double value = 0.0;
  double argmax_radius = 0.0;
  /// Increase of the maximum produced by the golden-section refinement.
  double refinement_delta = 0.0;
  std::size_t grid_points = 0;
  /// False when refinement moved the maximum by more than 1e-3 relative.
  bool grid_adequate = true;
};

/// sup_x (sum_{|mu| = k} Phi_mu(x)^2)^{1/2}, the L2 -> L_inf norm of P_k.
/// The kernel diagonal is rotation invariant, so it is evaluated along the
/// first axis. With radius_limit the sup is over |x| <= radius_limit.
SupNormResult restriction_sup_norm(int k, int n, std::optional<double> radius_limit = std::nullopt);

/// Kernel diagonal sum_{|mu| = k} Phi_mu(r e_1)^2.
double projection_kernel_diagonal(int k, int n, double r);

struct NkqNorm {
  int N = 1;
  double q = 2.0;
  double value = 0.0;
};

/// ((1/N^2) sum_l sup_{[(l-1)/N^2, l/N^2)} |F|^q)^{1/q} for F on [0, 1];
/// q = inf gives the sup norm. Each half-open cell is sampled at its left
/// end and samples_per_cell - 1 interior points.
NkqNorm nk2q_norm(const std::function<double(double)>& F, int N, double q, int samples_per_cell = 8);

}  // namespace rieszlab
