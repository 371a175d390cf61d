#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace rieszlab {

/// Multi-index mu = (mu_1, ..., mu_n) labelling the tensor Hermite function
/// Phi_mu. Entries are non-negative and the length is the ambient dimension.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  /// All-zero index in dimension n.
  static MultiIndex zero(int n);

  int dim() const noexcept { return static_cast<int>(entries_.size()); }
  /// |mu| = sum of entries.
  int order() const noexcept { return order_; }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::span<const int> entries() const noexcept { return entries_; }

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a,
                                          const MultiIndex& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<int> entries_;
  int order_ = 0;
};

/// Every multi-index of dimension n with |mu| = k, in descending
/// lexicographic order (mu_1 = k first).
std::vector<MultiIndex> level_indices(int k, int n);

/// Every multi-index of dimension n with |mu| <= K, grouped by level.
std::vector<MultiIndex> indices_up_to(int K, int n);

/// Number of multi-indices with |mu| = k in dimension n, C(k+n-1, n-1).
std::uint64_t level_multiplicity(int k, int n);

}  // namespace rieszlab
