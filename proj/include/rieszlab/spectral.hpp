#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "rieszlab/bump.hpp"
#include "rieszlab/expansion.hpp"
#include "rieszlab/hermite_table.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

/// A list of points in R^n.
using PointSet = std::vector<std::vector<double>>;

/// Level sums F_k(x) = sum_{|mu| = k} c(mu) Phi_mu(x) at each point:
/// result[i][k].
std::vector<std::vector<Complex>> level_values(const Expansion& e, const PointSet& points);

// ---------------------------------------------------------------------------
// Maximal Riesz means

/// Geometric grid on [R_min, R_max] with `per_octave` points per doubling,
/// merged with a point just above each kink sqrt(2k+n), k <= K.
std::vector<double> riesz_radius_grid(int K, int n, double R_min, double R_max, int per_octave = 16);

struct MaximalResult {
  /// max over the supplied R grid of |S_R^lambda f(x)|, per point.
  std::vector<double> values;
  /// Same over the refined grid (midpoints and kinks added); >= values.
  std::vector<double> refined_values;
  /// max_i (refined_values[i] - values[i]).
  double refinement_delta = 0.0;
  /// refinement_delta <= tolerance * max(1, max values).
  bool converged = false;
};

MaximalResult riesz_maximal(const Expansion& e, double lambda, std::span<const double> R_grid,
                            const PointSet& points, double tolerance = 1e-3);

// ---------------------------------------------------------------------------
// Square function  S_delta f(x) = (int |phi(delta^{-1}(1 - H/t^2)) f(x)|^2 dt/t)^{1/2}

struct SquareFunctionOptions {
  int panel_order = 24;
  /// Relative change at which panel doubling stops.
  double tolerance = 1e-10;
  int max_doublings = 10;
};

/// Pointwise values; low collects t <= delta^{-1/2}, high the rest, so
/// total^2 = low^2 + high^2.
struct SquareFunctionValues {
  std::vector<double> total;
  std::vector<double> low;
  std::vector<double> high;
};

SquareFunctionValues square_function(const Expansion& e, double delta, const SmoothProfile& phi,
                                     const PointSet& points, const SquareFunctionOptions& options = {});

/// T_{kl} = int phi_k(t) phi_l(t) dt/t with phi_k(t) = phi(delta^{-1}(1 - E_k/t^2)),
/// E_k = 2k + n, split at t = delta^{-1/2}.
struct SquareFunctionGram {
  Eigen::MatrixXd total;
  Eigen::MatrixXd low;
  Eigen::MatrixXd high;
};

SquareFunctionGram square_function_t_gram(int K, int n, double delta, const SmoothProfile& phi,
                                          const SquareFunctionOptions& options = {});

/// Squared norms of S_delta f in L2 with the weight whose level Gram matrix is
/// M_{kl} = int h_k h_l w (n = 1): sum_{kl} T_{kl} M_{kl} Re(c_k conj(c_l)).
struct SquareFunctionNorm {
  double total_sq = 0.0;
  double low_sq = 0.0;
  double high_sq = 0.0;
};

SquareFunctionNorm square_function_norm_sq(const Expansion& e, const SquareFunctionGram& T,
                                           const Eigen::MatrixXd& weight_gram);

/// Convenience: n = 1, weight (1+|x|)^{-alpha}.
SquareFunctionNorm square_function_weighted_norm_sq(const Expansion& e, double delta, const SmoothProfile& phi,
                                                    double alpha);

// ---------------------------------------------------------------------------
// Wave kernel of cos(t sqrt(H)), n = 1

/// K(x_i, y_j) = sum_{k <= K} cos(t sqrt(2k+1)) h_k(x_i) h_k(y_j).
Eigen::MatrixXd wave_kernel(double t, std::span<const double> nodes, int K);

struct WaveMass {
  double inside_sq = 0.0;
  double total_sq = 0.0;
  /// 1 - inside_sq / total_sq.
  double outside_fraction = 0.0;
  std::size_t node_count = 0;
};

/// Relative L2 mass of the truncated kernel outside |x - y| <= radius,
/// integrated with the rule for degree K. The total is sum_k cos^2 by
/// orthonormality; the inside part is assembled in row blocks.
WaveMass wave_outside_mass(double t, int K, double radius, const RuleOptions& options = {});

/// Same with a prebuilt rule and a Hermite table on its nodes (degree K).
WaveMass wave_outside_mass(double t, const HermiteTable& table, const QuadratureRule& rule, double radius);

// ---------------------------------------------------------------------------
// Littlewood-Paley pieces and the Weyl reconstruction

/// Applies phi(2^{-k} sqrt(E)); phi must be supported in (1, 3).
Expansion littlewood_paley(const Expansion& e, int k, const SmoothProfile& phi);

/// int_E^inf -F'(R) dR evaluated by Gauss-Legendre panels between the
/// support ends and E; this is the multiplier the nu = 1 identity assigns
/// to eigenvalue E.
double weyl_factor(const SmoothProfile& F, double E);

/// F(H) f assembled as int -F'(R) S^0_{sqrt R}(H) f dR (nu = 1). S^0 uses
/// the strict indicator E < R. F must have compact support in [0, inf).
Expansion riesz_from_weyl(const SmoothProfile& F, const Expansion& e, int nu = 1);

}  // namespace rieszlab
