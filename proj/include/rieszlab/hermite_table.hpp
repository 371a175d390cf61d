#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <span>
#include <vector>

namespace rieszlab {

/// Values h_k(node_j) for k = 0..K on a fixed node set.
///
/// Immutable once built; safe to share between concurrent readers.
///
/// Binary layout (all little-endian): 4-byte magic "RLHT", u32 version,
/// u64 K, u64 node count, f64 nodes[m], f64 values[(K+1) * m] row-major by
/// degree, then a u64 FNV-1a checksum of the preceding bytes.
class HermiteTable {
 public:
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  static constexpr std::uint32_t kFormatVersion = 1;

  HermiteTable() = default;
  HermiteTable(int max_degree, std::vector<double> nodes);

  int max_degree() const noexcept { return max_degree_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  double value(int k, std::size_t j) const { return values_(k, static_cast<Eigen::Index>(j)); }
  /// Row k: h_k at every node.
  std::span<const double> row(int k) const;
  const Matrix& values() const noexcept { return values_; }

  void save(std::ostream& os) const;
  static HermiteTable load(std::istream& is);

  friend bool operator==(const HermiteTable& a, const HermiteTable& b) {
    return a.max_degree_ == b.max_degree_ && a.nodes_ == b.nodes_ && a.values_ == b.values_;
  }

 private:
  int max_degree_ = -1;
  std::vector<double> nodes_;
  Matrix values_;
};

}  // namespace rieszlab
