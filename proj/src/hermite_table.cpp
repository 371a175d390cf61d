#include "rieszlab/hermite_table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "hermite_recurrence.hpp"
#include "rieszlab/binary_io.hpp"
#include "rieszlab/error.hpp"

namespace rieszlab {

namespace {
constexpr std::array<unsigned char, 4> kMagic{'R', 'L', 'H', 'T'};
}

HermiteTable::HermiteTable(int max_degree, std::vector<double> nodes)
    : max_degree_(max_degree), nodes_(std::move(nodes)) {
  if (max_degree < 0) throw std::invalid_argument("HermiteTable: negative degree");
  if (!std::is_sorted(nodes_.begin(), nodes_.end())) {
    throw std::invalid_argument("HermiteTable: nodes must be sorted");
  }
  for (double t : nodes_) {
    if (!std::isfinite(t)) throw std::invalid_argument("HermiteTable: non-finite node");
  }
  values_.resize(max_degree + 1, static_cast<Eigen::Index>(nodes_.size()));
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    detail::hermite_recurrence(max_degree, nodes_[j],
                               [&](int k, double v) { values_(k, col) = v; });
  }
}

std::span<const double> HermiteTable::row(int k) const {
  if (k < 0 || k > max_degree_) throw std::out_of_range("HermiteTable::row: degree out of range");
  return {values_.data() + static_cast<std::size_t>(k) * nodes_.size(), nodes_.size()};
}

void HermiteTable::save(std::ostream& os) const {
  binary::Writer w;
  w.raw(kMagic);
  w.u32(kFormatVersion);
  w.u64(static_cast<std::uint64_t>(max_degree_));
  w.u64(nodes_.size());
  w.f64s(nodes_);
  w.f64s(std::span(values_.data(), static_cast<std::size_t>(values_.size())));
  w.finish();
  w.write_to(os);
}

HermiteTable HermiteTable::load(std::istream& is) {
  auto r = binary::Reader::from_stream(is);
  const auto magic = r.raw(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw FormatError("HermiteTable: bad magic");
  }
  if (r.u32() != kFormatVersion) throw FormatError("HermiteTable: unsupported version");
  const auto K = r.u64();
  const auto m = r.u64();
  if (K > (1u << 20) || m > (1u << 28)) throw FormatError("HermiteTable: implausible header");
  HermiteTable t;
  t.max_degree_ = static_cast<int>(K);
  t.nodes_.resize(m);
  r.f64s(t.nodes_);
  t.values_.resize(static_cast<Eigen::Index>(K + 1), static_cast<Eigen::Index>(m));
  r.f64s(std::span(t.values_.data(), static_cast<std::size_t>(t.values_.size())));
  r.verify_checksum();
  return t;
}

}  // namespace rieszlab
