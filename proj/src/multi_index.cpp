#include "rieszlab/multi_index.hpp"

#include <numeric>
#include <stdexcept>

namespace rieszlab {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("MultiIndex: dimension must be at least 1");
  }
  for (int e : entries_) {
    if (e < 0) throw std::invalid_argument("MultiIndex: negative entry");
  }
  order_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zero(int n) {
  if (n < 1) throw std::invalid_argument("MultiIndex: dimension must be at least 1");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0));
}

std::string MultiIndex::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i]);
  }
  return out + ")";
}

namespace {

void enumerate_level(int remaining, std::size_t pos, std::vector<int>& cur,
                     std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    enumerate_level(remaining - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> level_indices(int k, int n) {
  if (k < 0) throw std::invalid_argument("level_indices: negative level");
  if (n < 1) throw std::invalid_argument("level_indices: dimension must be at least 1");
  std::vector<MultiIndex> out;
  out.reserve(level_multiplicity(k, n));
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  enumerate_level(k, 0, cur, out);
  return out;
}

std::vector<MultiIndex> indices_up_to(int K, int n) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= K; ++k) {
    auto level = level_indices(k, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::uint64_t level_multiplicity(int k, int n) {
  if (k < 0) throw std::invalid_argument("level_multiplicity: negative level");
  if (n < 1) throw std::invalid_argument("level_multiplicity: dimension must be at least 1");
  // C(k+n-1, n-1) computed incrementally; each partial product is an exact
  // binomial coefficient so the division is exact.
  std::uint64_t c = 1;
  for (int i = 1; i <= n - 1; ++i) {
    c = c * static_cast<std::uint64_t>(k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

}  // namespace rieszlab
