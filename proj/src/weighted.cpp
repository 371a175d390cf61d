#include "rieszlab/weighted.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hermite_recurrence.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/hermite.hpp"
#include "rieszlab/laguerre.hpp"
#include "rieszlab/multi_index.hpp"
#include "rieszlab/parallel.hpp"

namespace rieszlab {

namespace {

// Fixed chunk count for streamed Gram sums. Independent of the worker count so
// results do not depend on RIESZ_LAB_THREADS.
constexpr std::size_t kGramChunks = 16;

// H(k, i) = h_k(x_i) for k <= K.
Eigen::MatrixXd hermite_table(int K, std::span<const double> xs) {
  Eigen::MatrixXd H(K + 1, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    detail::hermite_recurrence(K, xs[i], [&](int k, double v) { H(k, col) = v; });
  }
  return H;
}

double radius_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("weight exponent alpha must be >= 0");
}

void check_dimension(std::uint64_t dim) {
  if (dim > kMaxDenseDimension) {
    throw CapacityError("level dimension " + std::to_string(dim) + " exceeds the dense eigensolver limit " +
                        std::to_string(kMaxDenseDimension));
  }
}

// dim H_l, the spherical harmonics of degree l on S^{n-1}.
std::uint64_t harmonic_dimension(int l, int n) {
  if (n == 1) return l <= 1 ? 1 : 0;
  const std::uint64_t a = level_multiplicity(l, n);
  const std::uint64_t b = l >= 2 ? level_multiplicity(l - 2, n) : 0;
  return a - b;
}

// Radial block values: one weighted Laguerre moment per angular degree
// l = k, k-2, ..., each with multiplicity dim H_l.
struct RadialBlock {
  int l = 0;
  double value = 0.0;
  std::uint64_t multiplicity = 0;
};

std::vector<RadialBlock> radial_blocks(int k, int n, double alpha) {
  std::vector<RadialBlock> blocks;
  for (int l = k; l >= 0; l -= 2) blocks.push_back({l, 0.0, harmonic_dimension(l, n)});
  parallel_for(blocks.size(), [&](std::size_t b) {
    const int l = blocks[b].l;
    const int j = (k - l) / 2;
    const double a = l + 0.5 * n - 1.0;
    blocks[b].value = laguerre_weighted_moment(j, a, [alpha](double r) { return std::pow(1.0 + r, -alpha); });
  });
  return blocks;
}

// Tensor rule for radial weights in n >= 2: shorter panels of lower order
// keep the n-fold product small, and geometric grading toward 0 resolves the
// cone point of (1+|x|)^{+-alpha}.
QuadratureRule tensor_rule(int k, double alpha, int n) {
  RuleOptions opt;
  opt.panel_order = 12;
  opt.density = 6.0;
  opt.origin_grading = n <= 2 ? 8 : 4;
  return build_rule(k, alpha, opt);
}

// Rows sqrt(q(x) w(|x|)) Phi_mu(x), |mu| = k, for a run of flat grid points.
// Calls sink(block) with a (points x dim) matrix for each chunk of the grid
// and returns the partial results in chunk order.
template <class Sink>
void stream_weighted_rows(int k, int n, double exponent, const QuadratureRule& rule, Sink&& sink) {
  const auto idx = level_indices(k, n);
  const auto dim = static_cast<Eigen::Index>(idx.size());
  const TensorGrid grid(n, rule);
  if (grid.size() > kMaxGridPoints) {
    throw CapacityError("tensor grid with " + std::to_string(grid.size()) + " points exceeds the limit");
  }
  const Eigen::MatrixXd H = hermite_table(k, rule.nodes());
  const std::size_t m = rule.size();
  const std::size_t outer = grid.size() / m;  // leading n-1 coordinates
  const std::size_t chunks = std::min(kGramChunks, outer);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = outer * c / chunks;
    const std::size_t end = outer * (c + 1) / chunks;
    Eigen::MatrixXd block(static_cast<Eigen::Index>(m), dim);
    std::vector<std::size_t> lead(static_cast<std::size_t>(n));
    for (std::size_t o = begin; o < end; ++o) {
      // Decode the leading coordinates of this line of the grid.
      std::size_t rem = o;
      for (int d = n - 2; d >= 0; --d) {
        lead[static_cast<std::size_t>(d)] = rem % m;
        rem /= m;
      }
      double lead_r2 = 0.0, lead_w = 1.0;
      for (int d = 0; d + 1 < n; ++d) {
        const double x = rule.nodes()[lead[static_cast<std::size_t>(d)]];
        lead_r2 += x * x;
        lead_w *= rule.weights()[lead[static_cast<std::size_t>(d)]];
      }
      for (std::size_t i = 0; i < m; ++i) {
        const double x = rule.nodes()[i];
        const double r = std::sqrt(lead_r2 + x * x);
        const double s = std::sqrt(lead_w * rule.weights()[i] * std::pow(1.0 + r, exponent));
        for (Eigen::Index col = 0; col < dim; ++col) {
          const auto& mu = idx[static_cast<std::size_t>(col)];
          double v = s * H(mu[static_cast<std::size_t>(n - 1)], static_cast<Eigen::Index>(i));
          for (int d = 0; d + 1 < n; ++d) {
            v *= H(mu[static_cast<std::size_t>(d)], static_cast<Eigen::Index>(lead[static_cast<std::size_t>(d)]));
          }
          block(static_cast<Eigen::Index>(i), col) = v;
        }
      }
      sink(c, block);
    }
  });
}

std::size_t chunk_count(int n, const QuadratureRule& rule) {
  const TensorGrid grid(n, rule);
  return std::min(kGramChunks, grid.size() / rule.size());
}

// Singular values of A (rows sqrt(q w^{-alpha}) Phi_mu) through a streamed QR:
// the triangular factor R has the singular values of A and never forms A^T A.
Eigen::VectorXd dual_singular_values(int k, int n, double alpha) {
  check_dimension(level_multiplicity(k, n));
  const auto rule = tensor_rule(k, alpha, n);
  const auto dim = static_cast<Eigen::Index>(level_multiplicity(k, n));
  std::vector<Eigen::MatrixXd> partial(chunk_count(n, rule), Eigen::MatrixXd::Zero(0, dim));
  stream_weighted_rows(k, n, -alpha, rule, [&](std::size_t c, const Eigen::MatrixXd& block) {
    Eigen::MatrixXd stacked(partial[c].rows() + block.rows(), dim);
    stacked << partial[c], block;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
    const Eigen::Index r = std::min(stacked.rows(), dim);
    partial[c] = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  });
  Eigen::Index rows = 0;
  for (const auto& p : partial) rows += p.rows();
  Eigen::MatrixXd stacked(rows, dim);
  Eigen::Index at = 0;
  for (const auto& p : partial) {
    stacked.middleRows(at, p.rows()) = p;
    at += p.rows();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  return svd.singularValues();
}

double golden_max(const std::function<double(double)>& f, double a, double b, int iterations) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

}  // namespace

double WeightSpec::operator()(double r) const { return std::pow(1.0 + r, exponent()); }

void WeightSpec::validate() const {
  check_alpha(alpha);
  if (sign != 1 && sign != -1) throw std::invalid_argument("WeightSpec: sign must be +1 or -1");
  if (n < 1) throw std::invalid_argument("WeightSpec: dimension must be >= 1");
}

namespace {

template <class T>
double weighted_norm_impl(std::span<const T> values, const WeightSpec& w, const QuadratureRule& rule) {
  w.validate();
  if (rule.weight_exponent() < w.alpha) {
    throw std::invalid_argument("weighted_norm: rule built for exponent " + std::to_string(rule.weight_exponent()) +
                                " but the weight needs " + std::to_string(w.alpha));
  }
  const TensorGrid grid(w.n, rule);
  if (values.size() != grid.size()) throw std::invalid_argument("weighted_norm: sample count does not match the grid");
  const std::size_t m = rule.size();
  double s = 0.0;
  std::vector<double> x;
  for (std::size_t p = 0; p < values.size(); ++p) {
    x = grid.point(p);
    double q = 1.0;
    std::size_t rem = p;
    for (int d = 0; d < w.n; ++d) {
      q *= rule.weights()[rem % m];
      rem /= m;
    }
    s += q * w(radius_of(x)) * std::norm(values[p]);
  }
  return std::sqrt(s);
}

}  // namespace

double weighted_norm(std::span<const Complex> values, const WeightSpec& w, const QuadratureRule& rule) {
  return weighted_norm_impl(values, w, rule);
}

double weighted_norm(std::span<const double> values, const WeightSpec& w, const QuadratureRule& rule) {
  return weighted_norm_impl(values, w, rule);
}

Eigen::MatrixXd weighted_hermite_gram(int K, double exponent) {
  if (K < 0) throw std::invalid_argument("weighted_hermite_gram: negative degree");
  const auto rule = build_rule(K, std::fabs(exponent));
  // Symmetric rule and even weight: use x >= 0 and double.
  const std::size_t m = rule.size() / 2;
  const auto xs = rule.nodes().subspan(m);
  const auto ws = rule.weights().subspan(m);
  Eigen::MatrixXd H = hermite_table(K, xs);
  for (std::size_t i = 0; i < m; ++i) {
    H.col(static_cast<Eigen::Index>(i)) *= std::sqrt(2.0 * ws[i] * std::pow(1.0 + xs[i], exponent));
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(K + 1, K + 1);
  M.selfadjointView<Eigen::Lower>().rankUpdate(H);
  M = M.selfadjointView<Eigen::Lower>();
  // Odd products integrate to zero exactly.
  for (int j = 0; j <= K; ++j)
    for (int k = 0; k <= K; ++k)
      if ((j + k) % 2 == 1) M(j, k) = 0.0;
  return M;
}

double hermite_weighted_moment(int k, double alpha, int sign) {
  if (k < 0) throw std::invalid_argument("hermite_weighted_moment: negative degree");
  check_alpha(alpha);
  if (sign != 1 && sign != -1) throw std::invalid_argument("hermite_weighted_moment: sign must be +1 or -1");
  const auto rule = build_rule(k, alpha);
  const std::size_t m = rule.size() / 2;
  const double e = sign * alpha;
  double s = 0.0;
  for (std::size_t i = m; i < rule.size(); ++i) {
    const double x = rule.nodes()[i];
    const double h = hermite_1d(k, x);
    s += rule.weights()[i] * h * h * std::pow(1.0 + x, e);
  }
  return 2.0 * s;
}

Eigen::MatrixXd level_weighted_gram(int k, int n, double exponent) {
  if (k < 0 || n < 1) throw std::invalid_argument("level_weighted_gram: need k >= 0, n >= 1");
  check_dimension(level_multiplicity(k, n));
  const auto rule = tensor_rule(k, std::fabs(exponent), n);
  const auto dim = static_cast<Eigen::Index>(level_multiplicity(k, n));
  std::vector<Eigen::MatrixXd> partial(chunk_count(n, rule), Eigen::MatrixXd::Zero(dim, dim));
  stream_weighted_rows(k, n, exponent, rule, [&](std::size_t c, const Eigen::MatrixXd& block) {
    partial[c].selfadjointView<Eigen::Lower>().rankUpdate(block.transpose());
  });
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& p : partial) G += p;
  return G.selfadjointView<Eigen::Lower>();
}

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::automatic: return "automatic";
    case NormMethod::radial: return "radial";
    case NormMethod::cartesian: return "cartesian";
    case NormMethod::dual_svd: return "dual_svd";
  }
  return "unknown";
}

std::vector<double> band_projection_gram_spectrum(int k, int n, double alpha, NormMethod method) {
  if (k < 0 || n < 1) throw std::invalid_argument("band_projection_gram_spectrum: need k >= 0, n >= 1");
  check_alpha(alpha);
  if (method == NormMethod::automatic) method = NormMethod::radial;
  std::vector<double> out;
  switch (method) {
    case NormMethod::radial: {
      if (n == 1) {
        out.push_back(hermite_weighted_moment(k, alpha, -1));
        break;
      }
      for (const auto& b : radial_blocks(k, n, alpha)) out.insert(out.end(), b.multiplicity, b.value);
      break;
    }
    case NormMethod::cartesian: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(level_weighted_gram(k, n, -alpha), Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      out.assign(ev.data(), ev.data() + ev.size());
      break;
    }
    case NormMethod::dual_svd: {
      const auto sv = dual_singular_values(k, n, alpha);
      for (Eigen::Index i = 0; i < sv.size(); ++i) out.push_back(sv[i] * sv[i]);
      break;
    }
    case NormMethod::automatic: break;
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

OperatorNormEstimate band_projection_weighted_norm(int k, int n, double alpha, NormMethod method) {
  if (k < 0 || n < 1) throw std::invalid_argument("band_projection_weighted_norm: need k >= 0, n >= 1");
  check_alpha(alpha);
  OperatorNormEstimate est;
  est.method = method == NormMethod::automatic ? NormMethod::radial : method;
  est.dimension = level_multiplicity(k, n);
  if (est.method == NormMethod::radial) {
    // Only the largest block matters; no need to expand multiplicities.
    double top = 0.0;
    if (n == 1) {
      top = hermite_weighted_moment(k, alpha, -1);
    } else {
      for (const auto& b : radial_blocks(k, n, alpha)) top = std::max(top, b.value);
    }
    est.value = std::sqrt(top);
    return est;
  }
  const auto spec = band_projection_gram_spectrum(k, n, alpha, est.method);
  est.value = std::sqrt(std::max(0.0, spec.front()));
  return est;
}

double local_band_mass(int k, int n, double M) {
  if (k < 0 || n < 1) throw std::invalid_argument("local_band_mass: need k >= 0, n >= 1");
  if (!(M > 0.0)) throw std::invalid_argument("local_band_mass: M must be positive");
  const int K = k;
  // Beyond the support of every h_j, j <= k, the box holds all the mass.
  const double L = hermite_half_width(K);
  const double edge = std::min(M, L);
  const auto rule = build_interval_rule(-edge, edge, K);
  const Eigen::MatrixXd H = hermite_table(K, rule.nodes);
  if (n == 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double h = H(K, static_cast<Eigen::Index>(i));
      s += rule.weights[i] * h * h;
    }
    return s;
  }
  check_dimension(level_multiplicity(k, n));
  Eigen::MatrixXd Hw = H;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) Hw.col(static_cast<Eigen::Index>(i)) *= rule.weights[i];
  const Eigen::MatrixXd B = Hw * H.transpose();
  const auto idx = level_indices(k, n);
  const auto dim = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd G(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      double v = 1.0;
      for (int d = 0; d < n; ++d) {
        v *= B(idx[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)],
               idx[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)]);
      }
      G(a, b) = G(b, a) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double sobolev_weight_ratio(const Expansion& f, double alpha) {
  check_alpha(alpha);
  const int n = f.dim();
  double den = 0.0;
  for (const auto& [mu, c] : f.coefficients()) den += std::pow(1.0 + static_cast<double>(eigenvalue(mu)), 2.0 * alpha) * std::norm(c);
  if (den == 0.0) throw std::invalid_argument("sobolev_weight_ratio: zero function");
  const auto rule = n >= 2 ? tensor_rule(f.truncation(), 4.0 * alpha, n) : build_rule(f.truncation(), 4.0 * alpha);
  const TensorGrid grid(n, rule);
  const auto values = synthesize_grid(f, grid);
  const WeightSpec w{4.0 * alpha, 1, n};
  const double num = weighted_norm(std::span<const Complex>(values), w, rule);
  return num / std::sqrt(den);
}

double projection_kernel_diagonal(int k, int n, double r) {
  if (k < 0 || n < 1) throw std::invalid_argument("projection_kernel_diagonal: need k >= 0, n >= 1");
  // S(j) = sum over nu in N^{n-1}, |nu| = j, of prod h_{nu_d}(0)^2.
  std::vector<double> a(static_cast<std::size_t>(k) + 1);
  detail::hermite_recurrence(k, 0.0, [&](int j, double v) { a[static_cast<std::size_t>(j)] = v * v; });
  std::vector<double> S(static_cast<std::size_t>(k) + 1, 0.0);
  S[0] = 1.0;
  for (int d = 0; d + 1 < n; ++d) {
    std::vector<double> next(S.size(), 0.0);
    for (std::size_t j = 0; j < S.size(); ++j)
      for (std::size_t i = 0; i <= j; ++i) next[j] += a[i] * S[j - i];
    S = std::move(next);
  }
  double s = 0.0;
  detail::hermite_recurrence(k, r, [&](int i, double v) { s += v * v * S[static_cast<std::size_t>(k - i)]; });
  return s;
}

SupNormResult restriction_sup_norm(int k, int n, std::optional<double> radius_limit) {
  if (k < 0 || n < 1) throw std::invalid_argument("restriction_sup_norm: need k >= 0, n >= 1");
  if (radius_limit && !(*radius_limit >= 0.0)) throw std::invalid_argument("restriction_sup_norm: negative radius");
  const double N = 2.0 * k + n;
  // The diagonal is radial and concentrated in |x| <= sqrt(N); beyond the
  // turning point it decays like a Gaussian.
  double R = std::sqrt(N) + 6.0 * std::pow(N, -1.0 / 6.0) + 2.0;
  if (radius_limit) R = std::min(R, *radius_limit);
  const double step = std::numbers::pi / (8.0 * std::sqrt(N));
  const int count = std::max(2, static_cast<int>(std::ceil(R / step)) + 1);
  std::vector<double> rs(static_cast<std::size_t>(count)), vals(rs.size());
  for (int i = 0; i < count; ++i) rs[static_cast<std::size_t>(i)] = R * i / (count - 1);
  parallel_for(rs.size(), [&](std::size_t i) { vals[i] = projection_kernel_diagonal(k, n, rs[i]); });

  SupNormResult res;
  res.grid_points = rs.size();
  const auto best = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  const double discrete = vals[best];
  res.argmax_radius = rs[best];

  // Golden-section refinement around the three largest discrete local maxima.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const bool left = i == 0 || vals[i] >= vals[i - 1];
    const bool right = i + 1 == vals.size() || vals[i] >= vals[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  if (peaks.size() > 3) peaks.resize(3);
  double refined = discrete;
  for (std::size_t p : peaks) {
    const double lo = rs[p == 0 ? 0 : p - 1];
    const double hi = rs[std::min(p + 1, rs.size() - 1)];
    if (!(hi > lo)) continue;
    const double v = golden_max([&](double r) { return projection_kernel_diagonal(k, n, r); }, lo, hi, 60);
    if (v > refined) {
      refined = v;
      res.argmax_radius = 0.5 * (lo + hi);
    }
  }
  res.value = std::sqrt(refined);
  res.refinement_delta = res.value - std::sqrt(discrete);
  res.grid_adequate = res.refinement_delta <= 1e-3 * res.value;
  return res;
}

NkqNorm nk2q_norm(const std::function<double(double)>& F, int N, double q, int samples_per_cell) {
  if (N < 1) throw std::invalid_argument("nk2q_norm: N must be >= 1");
  if (!(q >= 1.0)) throw std::invalid_argument("nk2q_norm: q must be >= 1");
  if (samples_per_cell < 1) throw std::invalid_argument("nk2q_norm: need at least one sample per cell");
  const std::int64_t cells = static_cast<std::int64_t>(N) * N;
  const double width = 1.0 / static_cast<double>(cells);
  NkqNorm out{N, q, 0.0};
  double acc = 0.0, sup = 0.0;
  for (std::int64_t l = 0; l < cells; ++l) {
    double m = 0.0;
    for (int s = 0; s < samples_per_cell; ++s) {
      const double x = (static_cast<double>(l) + static_cast<double>(s) / samples_per_cell) * width;
      m = std::max(m, std::fabs(F(x)));
    }
    sup = std::max(sup, m);
    if (std::isfinite(q)) acc += std::pow(m, q);
  }
  out.value = std::isfinite(q) ? std::pow(acc / static_cast<double>(cells), 1.0 / q) : sup;
  return out;
}

}  // namespace rieszlab
