#include "rieszlab/expansion.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hermite_recurrence.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/hermite.hpp"

namespace rieszlab {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// H(k, i) = h_k(x_i), optionally scaled by w_i.
RowMatrix hermite_matrix(int K, std::span<const double> xs, std::span<const double> ws = {}) {
  RowMatrix H(K + 1, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double w = ws.empty() ? 1.0 : ws[i];
    const auto col = static_cast<Eigen::Index>(i);
    detail::hermite_recurrence(K, xs[i], [&](int k, double v) { H(k, col) = w * v; });
  }
  return H;
}

// Contracts axis `axis` of a row-major tensor with M (rows x dims[axis]).
std::vector<double> mode_product(const std::vector<double>& T, std::vector<std::size_t>& dims,
                                 std::size_t axis, const RowMatrix& M) {
  std::size_t pre = 1, post = 1;
  for (std::size_t i = 0; i < axis; ++i) pre *= dims[i];
  for (std::size_t i = axis + 1; i < dims.size(); ++i) post *= dims[i];
  const auto d = static_cast<Eigen::Index>(dims[axis]);
  const auto r = M.rows();
  std::vector<double> out(pre * static_cast<std::size_t>(r) * post);
  if (post == 1) {
    Eigen::Map<const RowMatrix> X(T.data(), static_cast<Eigen::Index>(pre), d);
    Eigen::Map<RowMatrix> Y(out.data(), static_cast<Eigen::Index>(pre), r);
    Y.noalias() = X * M.transpose();
  } else {
    const auto postI = static_cast<Eigen::Index>(post);
    for (std::size_t p = 0; p < pre; ++p) {
      Eigen::Map<const RowMatrix> X(T.data() + p * dims[axis] * post, d, postI);
      Eigen::Map<RowMatrix> Y(out.data() + p * static_cast<std::size_t>(r) * post, r, postI);
      Y.noalias() = M * X;
    }
  }
  dims[axis] = static_cast<std::size_t>(r);
  return out;
}

std::vector<double> apply_all_axes(std::vector<double> T, std::size_t m, int n, const RowMatrix& M) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(n), m);
  for (int a = 0; a < n; ++a) T = mode_product(T, dims, static_cast<std::size_t>(a), M);
  return T;
}

void check_grid_size(const TensorGrid& grid) {
  if (grid.size() > kMaxGridPoints) {
    throw CapacityError("tensor grid with " + std::to_string(grid.size()) + " points exceeds the limit");
  }
}

}  // namespace

TensorGrid::TensorGrid(int dim, std::vector<double> axis_nodes, std::vector<double> axis_weights)
    : n(dim), nodes(std::move(axis_nodes)), weights(std::move(axis_weights)) {
  if (n < 1) throw std::invalid_argument("TensorGrid: dimension must be >= 1");
  if (!weights.empty() && weights.size() != nodes.size()) {
    throw std::invalid_argument("TensorGrid: weight count differs from node count");
  }
}

TensorGrid::TensorGrid(int dim, const QuadratureRule& rule)
    : TensorGrid(dim, std::vector<double>(rule.nodes().begin(), rule.nodes().end()),
                 std::vector<double>(rule.weights().begin(), rule.weights().end())) {}

std::size_t TensorGrid::size() const {
  std::size_t s = 1;
  for (int i = 0; i < n; ++i) {
    if (nodes.size() != 0 && s > kMaxGridPoints * 16 / nodes.size()) return kMaxGridPoints * 16;
    s *= nodes.size();
  }
  return s;
}

std::vector<double> TensorGrid::point(std::size_t flat) const {
  std::vector<double> x(static_cast<std::size_t>(n));
  const std::size_t m = nodes.size();
  for (int i = n - 1; i >= 0; --i) {
    x[static_cast<std::size_t>(i)] = nodes[flat % m];
    flat /= m;
  }
  return x;
}

Expansion::Expansion(int n, int K) : n_(n), K_(K) {
  if (n < 1) throw std::invalid_argument("Expansion: dimension must be >= 1");
  if (K < 0) throw std::invalid_argument("Expansion: truncation must be >= 0");
}

void Expansion::check(const MultiIndex& mu) const {
  if (mu.dim() != n_) throw std::invalid_argument("Expansion: multi-index dimension mismatch");
}

Complex Expansion::coefficient(const MultiIndex& mu) const {
  check(mu);
  auto it = coeffs_.find(mu);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void Expansion::set(const MultiIndex& mu, Complex value) {
  check(mu);
  if (mu.order() > K_) {
    throw std::invalid_argument("Expansion: index " + mu.to_string() + " exceeds truncation " +
                                std::to_string(K_));
  }
  coeffs_[mu] = value;
}

double Expansion::norm_squared() const {
  double s = 0.0;
  for (const auto& [mu, c] : coeffs_) s += std::norm(c);
  return s;
}

Expansion Expansion::level(int k) const {
  Expansion out(n_, K_);
  for (const auto& [mu, c] : coeffs_) {
    if (mu.order() == k) out.coeffs_.emplace(mu, c);
  }
  return out;
}

double max_coefficient_difference(const Expansion& a, const Expansion& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("max_coefficient_difference: dimension mismatch");
  double d = 0.0;
  for (const auto& [mu, c] : a.coeffs_) d = std::max(d, std::abs(c - b.coefficient(mu)));
  for (const auto& [mu, c] : b.coeffs_) d = std::max(d, std::abs(c - a.coefficient(mu)));
  return d;
}

void Expansion::write_text(std::ostream& os) const {
  os << n_ << ' ' << K_ << '\n';
  char buf[64];
  for (const auto& [mu, c] : coeffs_) {
    for (int v : mu.entries()) os << v << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", c.real());
    os << buf << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", c.imag());
    os << buf << '\n';
  }
}

std::string Expansion::to_text() const {
  std::ostringstream os;
  write_text(os);
  return os.str();
}

Expansion Expansion::read_text(std::istream& is) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw FormatError("expansion text: missing header");
  std::istringstream header(line);
  int n = 0, K = 0;
  if (!(header >> n >> K) || n < 1 || K < 0) throw FormatError("expansion text: bad header line");
  std::string extra;
  if (header >> extra) throw FormatError("expansion text: trailing data in header");
  Expansion e(n, K);
  while (next_line()) {
    std::istringstream ls(line);
    std::vector<int> mu(static_cast<std::size_t>(n));
    double re = 0.0, im = 0.0;
    for (auto& v : mu) {
      if (!(ls >> v) || v < 0) {
        throw FormatError("expansion text: bad index on line " + std::to_string(line_no));
      }
    }
    if (!(ls >> re >> im)) throw FormatError("expansion text: bad value on line " + std::to_string(line_no));
    if (ls >> extra) throw FormatError("expansion text: trailing data on line " + std::to_string(line_no));
    MultiIndex idx(std::move(mu));
    if (idx.order() > K) throw FormatError("expansion text: index above truncation on line " + std::to_string(line_no));
    e.coeffs_[idx] = Complex(re, im);
  }
  return e;
}

Expansion Expansion::from_text(const std::string& text) {
  std::istringstream is(text);
  return read_text(is);
}

Expansion analyze_samples(const TensorGrid& grid, std::span<const Complex> samples, int K) {
  if (K < 0) throw std::invalid_argument("analyze: negative truncation");
  if (grid.weights.size() != grid.nodes.size()) throw std::invalid_argument("analyze: grid has no weights");
  check_grid_size(grid);
  if (samples.size() != grid.size()) throw std::invalid_argument("analyze: sample count differs from grid size");
  const RowMatrix A = hermite_matrix(K, grid.nodes, grid.weights);

  std::vector<double> re(samples.size()), im(samples.size());
  bool has_imag = false;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
    has_imag = has_imag || im[i] != 0.0;
  }
  const auto cre = apply_all_axes(std::move(re), grid.nodes.size(), grid.n, A);
  std::vector<double> cim;
  if (has_imag) cim = apply_all_axes(std::move(im), grid.nodes.size(), grid.n, A);

  Expansion e(grid.n, K);
  const auto stride = static_cast<std::size_t>(K + 1);
  for (const auto& mu : indices_up_to(K, grid.n)) {
    std::size_t flat = 0;
    for (int v : mu.entries()) flat = flat * stride + static_cast<std::size_t>(v);
    e.set(mu, Complex(cre[flat], has_imag ? cim[flat] : 0.0));
  }
  return e;
}

Expansion analyze_samples(const TensorGrid& grid, std::span<const double> samples, int K) {
  std::vector<Complex> z(samples.begin(), samples.end());
  return analyze_samples(grid, z, K);
}

Expansion analyze(const SampleFunction& f, int n, int K, const QuadratureRule& rule) {
  if (rule.design_degree() < K) {
    throw std::invalid_argument("analyze: rule design degree " + std::to_string(rule.design_degree()) +
                                " is below the target degree " + std::to_string(K));
  }
  TensorGrid grid(n, rule);
  check_grid_size(grid);
  std::vector<Complex> samples(grid.size());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = f(grid.point(i));
  return analyze_samples(grid, samples, K);
}

Complex synthesize(const Expansion& e, std::span<const double> x) {
  if (static_cast<int>(x.size()) != e.dim()) throw std::invalid_argument("synthesize: dimension mismatch");
  const int K = e.truncation();
  std::vector<std::vector<double>> h(x.size(), std::vector<double>(static_cast<std::size_t>(K) + 1));
  for (std::size_t i = 0; i < x.size(); ++i) hermite_upto(K, x[i], h[i]);
  Complex s{};
  for (const auto& [mu, c] : e.coefficients()) {
    double phi = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) phi *= h[i][static_cast<std::size_t>(mu[i])];
    s += c * phi;
  }
  return s;
}

std::vector<Complex> synthesize_grid(const Expansion& e, const TensorGrid& grid) {
  if (grid.n != e.dim()) throw std::invalid_argument("synthesize_grid: dimension mismatch");
  check_grid_size(grid);
  const int K = e.truncation();
  const auto stride = static_cast<std::size_t>(K + 1);
  std::size_t box = 1;
  for (int i = 0; i < grid.n; ++i) box *= stride;
  std::vector<double> re(box, 0.0), im(box, 0.0);
  bool has_imag = false;
  for (const auto& [mu, c] : e.coefficients()) {
    std::size_t flat = 0;
    for (int v : mu.entries()) flat = flat * stride + static_cast<std::size_t>(v);
    re[flat] = c.real();
    im[flat] = c.imag();
    has_imag = has_imag || c.imag() != 0.0;
  }
  const RowMatrix S = hermite_matrix(K, grid.nodes).transpose();
  const auto vre = apply_all_axes(std::move(re), stride, grid.n, S);
  std::vector<Complex> out(vre.size());
  if (has_imag) {
    const auto vim = apply_all_axes(std::move(im), stride, grid.n, S);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Complex(vre[i], vim[i]);
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = vre[i];
  }
  return out;
}

std::vector<Complex> synthesize_1d(const Expansion& e, std::span<const double> xs) {
  if (e.dim() != 1) throw std::invalid_argument("synthesize_1d: expansion is not one-dimensional");
  return synthesize_grid(e, TensorGrid(1, std::vector<double>(xs.begin(), xs.end())));
}

}  // namespace rieszlab
