#include "rieszlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hermite_recurrence.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/hermite.hpp"
#include "rieszlab/weighted.hpp"

namespace rieszlab {

std::vector<std::vector<Complex>> level_values(const Expansion& e, const PointSet& points) {
  const int K = e.truncation();
  const auto n = static_cast<std::size_t>(e.dim());
  std::vector<std::vector<Complex>> out(points.size(), std::vector<Complex>(static_cast<std::size_t>(K) + 1));
  std::vector<std::vector<double>> h(n, std::vector<double>(static_cast<std::size_t>(K) + 1));
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (points[p].size() != n) throw std::invalid_argument("level_values: point dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) hermite_upto(K, points[p][i], h[i]);
    for (const auto& [mu, c] : e.coefficients()) {
      double phi = 1.0;
      for (std::size_t i = 0; i < n; ++i) phi *= h[i][static_cast<std::size_t>(mu[i])];
      out[p][static_cast<std::size_t>(mu.order())] += c * phi;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> riesz_radius_grid(int K, int n, double R_min, double R_max, int per_octave) {
  if (!(R_min > 0.0) || !(R_max > R_min) || per_octave < 1) {
    throw std::invalid_argument("riesz_radius_grid: need 0 < R_min < R_max and per_octave >= 1");
  }
  std::set<double> grid;
  const double ratio = std::exp2(1.0 / per_octave);
  for (double R = R_min; R < R_max; R *= ratio) grid.insert(R);
  grid.insert(R_max);
  for (int k = 0; k <= K; ++k) {
    const double kink = std::sqrt(2.0 * k + n) * (1.0 + 1e-9);
    if (kink > R_min && kink < R_max) grid.insert(kink);
  }
  return {grid.begin(), grid.end()};
}

MaximalResult riesz_maximal(const Expansion& e, double lambda, std::span<const double> R_grid,
                            const PointSet& points, double tolerance) {
  if (lambda < 0.0) throw std::invalid_argument("riesz_maximal: lambda must be >= 0");
  if (R_grid.empty() || points.empty()) throw std::invalid_argument("riesz_maximal: empty grid");
  for (std::size_t i = 0; i < R_grid.size(); ++i) {
    if (!(R_grid[i] > 0.0) || !std::isfinite(R_grid[i]) || (i > 0 && !(R_grid[i] > R_grid[i - 1]))) {
      throw std::invalid_argument("riesz_maximal: R grid must be positive, finite and increasing");
    }
  }
  const auto F = level_values(e, points);
  const int K = e.truncation();
  const int n = e.dim();

  auto sweep = [&](std::span<const double> Rs) {
    std::vector<double> best(points.size(), 0.0);
    std::vector<double> factors(static_cast<std::size_t>(K) + 1);
    for (double R : Rs) {
      for (int k = 0; k <= K; ++k) factors[static_cast<std::size_t>(k)] = riesz_factor(2.0 * k + n, lambda, R);
      for (std::size_t p = 0; p < points.size(); ++p) {
        Complex s{};
        for (std::size_t k = 0; k < factors.size(); ++k) s += factors[k] * F[p][k];
        best[p] = std::max(best[p], std::abs(s));
      }
    }
    return best;
  };

  MaximalResult res;
  res.values = sweep(R_grid);

  std::set<double> refined(R_grid.begin(), R_grid.end());
  for (std::size_t i = 0; i + 1 < R_grid.size(); ++i) refined.insert(std::sqrt(R_grid[i] * R_grid[i + 1]));
  for (int k = 0; k <= K; ++k) {
    const double kink = std::sqrt(2.0 * k + n);
    for (double s : {1.0 + 1e-9, 1.0 + 1e-3}) {
      const double R = kink * s;
      if (R > R_grid.front() && R < R_grid.back()) refined.insert(R);
    }
  }
  const std::vector<double> rg(refined.begin(), refined.end());
  res.refined_values = sweep(rg);
  double scale = 1.0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    res.refinement_delta = std::max(res.refinement_delta, res.refined_values[p] - res.values[p]);
    scale = std::max(scale, res.values[p]);
  }
  res.converged = res.refinement_delta <= tolerance * scale;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

struct TInterval {
  double a = 0.0;
  double b = 0.0;
  bool low = true;
  std::vector<int> active;
};

void check_square_args(double delta, const SmoothProfile& phi) {
  if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("square_function: delta must lie in (0, 1/2]");
  if (phi.support_lo < 0.125 || phi.support_hi > 0.5 || !(phi.support_lo < phi.support_hi)) {
    throw std::invalid_argument("square_function: phi must be supported in [1/8, 1/2]");
  }
}

// Elementary t-intervals on which the set of active levels is constant.
std::vector<TInterval> t_intervals(const std::vector<int>& levels, int n, double delta, const SmoothProfile& phi) {
  const double split = 1.0 / std::sqrt(delta);
  std::vector<double> lo(levels.size()), hi(levels.size());
  std::set<double> br;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double E = 2.0 * levels[i] + n;
    lo[i] = std::sqrt(E / (1.0 - delta * phi.support_lo));
    hi[i] = std::sqrt(E / (1.0 - delta * phi.support_hi));
    br.insert(lo[i]);
    br.insert(hi[i]);
  }
  if (br.empty()) return {};
  if (split > *br.begin() && split < *br.rbegin()) br.insert(split);
  std::vector<double> pts(br.begin(), br.end());
  std::vector<TInterval> out;
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    TInterval iv;
    iv.a = pts[j];
    iv.b = pts[j + 1];
    iv.low = iv.b <= split;
    const double mid = 0.5 * (iv.a + iv.b);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (lo[i] < mid && mid < hi[i]) iv.active.push_back(levels[i]);
    }
    if (!iv.active.empty()) out.push_back(std::move(iv));
  }
  return out;
}

// Integrates a vector-valued functional over [a, b] with panel doubling.
// eval(t, w, acc) adds w * integrand(t) into acc.
template <class Eval>
std::vector<double> integrate_vector(double a, double b, std::size_t size, const SquareFunctionOptions& opt,
                                     Eval&& eval) {
  const auto& gl = gauss_legendre(opt.panel_order);
  auto run = [&](int panels) {
    std::vector<double> acc(size, 0.0);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * h;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        eval(mid + 0.5 * h * gl.nodes[i], 0.5 * h * gl.weights[i], acc);
      }
    }
    return acc;
  };
  auto prev = run(1);
  for (int d = 1, panels = 2; d <= opt.max_doublings; ++d, panels *= 2) {
    auto cur = run(panels);
    double diff = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      diff = std::max(diff, std::fabs(cur[i] - prev[i]));
      mag = std::max(mag, std::fabs(cur[i]));
    }
    if (diff <= opt.tolerance * mag || mag == 0.0) return cur;
    prev = std::move(cur);
  }
  throw NumericalError("square function: t-integration did not converge on [" + std::to_string(a) + ", " +
                       std::to_string(b) + "]");
}

std::vector<int> occurring_levels(const Expansion& e) {
  std::set<int> s;
  for (const auto& [mu, c] : e.coefficients()) {
    if (c != Complex{}) s.insert(mu.order());
  }
  return {s.begin(), s.end()};
}

}  // namespace

SquareFunctionValues square_function(const Expansion& e, double delta, const SmoothProfile& phi,
                                     const PointSet& points, const SquareFunctionOptions& options) {
  check_square_args(delta, phi);
  const auto F = level_values(e, points);
  const auto levels = occurring_levels(e);
  const int n = e.dim();
  const std::size_t P = points.size();
  std::vector<double> low(P, 0.0), high(P, 0.0);
  for (const auto& iv : t_intervals(levels, n, delta, phi)) {
    std::vector<double> factors(iv.active.size());
    auto acc = integrate_vector(iv.a, iv.b, P, options, [&](double t, double w, std::vector<double>& out) {
      for (std::size_t j = 0; j < iv.active.size(); ++j) {
        factors[j] = phi.value((1.0 - (2.0 * iv.active[j] + n) / (t * t)) / delta);
      }
      for (std::size_t p = 0; p < P; ++p) {
        Complex s{};
        for (std::size_t j = 0; j < iv.active.size(); ++j) {
          s += factors[j] * F[p][static_cast<std::size_t>(iv.active[j])];
        }
        out[p] += w * std::norm(s) / t;
      }
    });
    auto& dst = iv.low ? low : high;
    for (std::size_t p = 0; p < P; ++p) dst[p] += acc[p];
  }
  SquareFunctionValues v;
  v.total.resize(P);
  v.low.resize(P);
  v.high.resize(P);
  for (std::size_t p = 0; p < P; ++p) {
    v.total[p] = std::sqrt(low[p] + high[p]);
    v.low[p] = std::sqrt(low[p]);
    v.high[p] = std::sqrt(high[p]);
  }
  return v;
}

SquareFunctionGram square_function_t_gram(int K, int n, double delta, const SmoothProfile& phi,
                                          const SquareFunctionOptions& options) {
  check_square_args(delta, phi);
  if (K < 0 || n < 1) throw std::invalid_argument("square_function_t_gram: need K >= 0, n >= 1");
  std::vector<int> levels(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) levels[static_cast<std::size_t>(k)] = k;
  SquareFunctionGram g;
  g.low = Eigen::MatrixXd::Zero(K + 1, K + 1);
  g.high = Eigen::MatrixXd::Zero(K + 1, K + 1);
  for (const auto& iv : t_intervals(levels, n, delta, phi)) {
    const std::size_t m = iv.active.size();
    std::vector<double> factors(m);
    auto acc = integrate_vector(iv.a, iv.b, m * m, options, [&](double t, double w, std::vector<double>& out) {
      for (std::size_t j = 0; j < m; ++j) factors[j] = phi.value((1.0 - (2.0 * iv.active[j] + n) / (t * t)) / delta);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) out[i * m + j] += w * factors[i] * factors[j] / t;
      }
    });
    auto& dst = iv.low ? g.low : g.high;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) dst(iv.active[i], iv.active[j]) += acc[i * m + j];
    }
  }
  g.total = g.low + g.high;
  return g;
}

SquareFunctionNorm square_function_norm_sq(const Expansion& e, const SquareFunctionGram& T,
                                           const Eigen::MatrixXd& weight_gram) {
  if (e.dim() != 1) throw std::invalid_argument("square_function_norm_sq: level Gram route needs n = 1");
  const int K = e.truncation();
  if (T.total.rows() != K + 1 || weight_gram.rows() != K + 1) {
    throw std::invalid_argument("square_function_norm_sq: Gram sizes differ from the truncation");
  }
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(K + 1);
  for (const auto& [mu, v] : e.coefficients()) c(mu[0]) = v;
  auto form = [&](const Eigen::MatrixXd& t) {
    const Eigen::MatrixXd A = t.cwiseProduct(weight_gram);
    return (c.adjoint() * A.cast<Complex>() * c)(0, 0).real();
  };
  return {form(T.total), form(T.low), form(T.high)};
}

SquareFunctionNorm square_function_weighted_norm_sq(const Expansion& e, double delta, const SmoothProfile& phi,
                                                    double alpha) {
  const auto T = square_function_t_gram(e.truncation(), e.dim(), delta, phi);
  return square_function_norm_sq(e, T, weighted_hermite_gram(e.truncation(), -alpha));
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd wave_kernel(double t, std::span<const double> nodes, int K) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("wave_kernel: t must be finite and >= 0");
  if (K < 0) throw std::invalid_argument("wave_kernel: negative truncation");
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd H(K + 1, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    detail::hermite_recurrence(K, nodes[static_cast<std::size_t>(j)], [&](int k, double v) { H(k, j) = v; });
  }
  Eigen::VectorXd c(K + 1);
  for (int k = 0; k <= K; ++k) c(k) = std::cos(t * std::sqrt(2.0 * k + 1.0));
  return H.transpose() * c.asDiagonal() * H;
}

WaveMass wave_outside_mass(double t, int K, double radius, const RuleOptions& options) {
  const auto rule = build_rule(K, 0.0, options);
  const auto x = rule.nodes();
  return wave_outside_mass(t, HermiteTable(K, std::vector<double>(x.begin(), x.end())), rule, radius);
}

WaveMass wave_outside_mass(double t, const HermiteTable& table, const QuadratureRule& rule, double radius) {
  if (!(t >= 0.0) || !(radius >= 0.0)) throw std::invalid_argument("wave_outside_mass: need t, radius >= 0");
  const auto x = rule.nodes();
  const auto w = rule.weights();
  if (!std::equal(x.begin(), x.end(), table.nodes().begin(), table.nodes().end())) {
    throw std::invalid_argument("wave_outside_mass: table nodes differ from the rule nodes");
  }
  const int K = table.max_degree();
  const auto m = static_cast<Eigen::Index>(x.size());
  // A(k, j) = sqrt(w_j) h_k(x_j); the weighted kernel is A^T C A.
  Eigen::MatrixXd A = table.values();
  for (Eigen::Index j = 0; j < m; ++j) A.col(j) *= std::sqrt(w[static_cast<std::size_t>(j)]);
  Eigen::VectorXd c(K + 1);
  double total = 0.0;
  for (int k = 0; k <= K; ++k) {
    c(k) = std::cos(t * std::sqrt(2.0 * k + 1.0));
    total += c(k) * c(k);
  }
  const Eigen::MatrixXd CA = c.asDiagonal() * A;

  constexpr Eigen::Index kBlock = 128;
  double inside = 0.0;
  for (Eigen::Index i0 = 0; i0 < m; i0 += kBlock) {
    const Eigen::Index i1 = std::min(m, i0 + kBlock);
    const double xlo = x[static_cast<std::size_t>(i0)] - radius;
    const double xhi = x[static_cast<std::size_t>(i1 - 1)] + radius;
    const auto j0 = static_cast<Eigen::Index>(std::lower_bound(x.begin(), x.end(), xlo) - x.begin());
    const auto j1 = static_cast<Eigen::Index>(std::upper_bound(x.begin(), x.end(), xhi) - x.begin());
    const Eigen::MatrixXd B = A.middleCols(i0, i1 - i0).transpose() * CA.middleCols(j0, j1 - j0);
    for (Eigen::Index i = i0; i < i1; ++i) {
      const double xi = x[static_cast<std::size_t>(i)];
      for (Eigen::Index j = j0; j < j1; ++j) {
        if (std::fabs(xi - x[static_cast<std::size_t>(j)]) <= radius) {
          const double v = B(i - i0, j - j0);
          inside += v * v;
        }
      }
    }
  }
  WaveMass res;
  res.inside_sq = inside;
  res.total_sq = total;
  res.outside_fraction = std::max(0.0, 1.0 - inside / total);
  res.node_count = x.size();
  return res;
}

// ---------------------------------------------------------------------------

Expansion littlewood_paley(const Expansion& e, int k, const SmoothProfile& phi) {
  return apply_multiplier(e, lp_profile(k, phi));
}

namespace {

void check_weyl_profile(const SmoothProfile& F, int nu) {
  if (nu != 1) throw std::invalid_argument("riesz_from_weyl: only nu = 1 is implemented");
  if (!std::isfinite(F.support_lo) || !std::isfinite(F.support_hi) || F.support_lo < 0.0 ||
      !(F.support_hi > F.support_lo) || !F.derivative) {
    throw std::invalid_argument("riesz_from_weyl: F needs a derivative and compact support in [0, inf)");
  }
}

double minus_derivative_integral(const SmoothProfile& F, double a, double b) {
  return -integrate_adaptive(F.derivative, a, b, 1e-14, 1e-16);
}

}  // namespace

double weyl_factor(const SmoothProfile& F, double E) {
  check_weyl_profile(F, 1);
  if (E >= F.support_hi) return 0.0;
  return minus_derivative_integral(F, std::max(E, F.support_lo), F.support_hi);
}

Expansion riesz_from_weyl(const SmoothProfile& F, const Expansion& e, int nu) {
  check_weyl_profile(F, nu);
  const int K = e.truncation();
  const int n = e.dim();
  // Panels between consecutive breakpoints (support ends and eigenvalues
  // inside the support); factor(E_k) sums the panels above E_k.
  std::vector<double> br{F.support_lo};
  for (int k = 0; k <= K; ++k) {
    const double E = 2.0 * k + n;
    if (E > F.support_lo && E < F.support_hi) br.push_back(E);
  }
  br.push_back(F.support_hi);
  std::vector<double> panel(br.size() - 1);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) panel[i] = minus_derivative_integral(F, br[i], br[i + 1]);
  // suffix[i] = sum of panels i..end.
  std::vector<double> suffix(br.size(), 0.0);
  for (std::size_t i = panel.size(); i-- > 0;) suffix[i] = suffix[i + 1] + panel[i];

  std::vector<double> factor(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    const double E = 2.0 * k + n;
    if (E >= F.support_hi) continue;
    const auto it = std::lower_bound(br.begin(), br.end(), std::max(E, F.support_lo));
    factor[static_cast<std::size_t>(k)] = suffix[static_cast<std::size_t>(it - br.begin())];
  }
  Expansion out(n, K);
  for (const auto& [mu, c] : e.coefficients()) {
    out.coefficients().emplace_hint(out.coefficients().end(), mu, factor[static_cast<std::size_t>(mu.order())] * c);
  }
  return out;
}

}  // namespace rieszlab
