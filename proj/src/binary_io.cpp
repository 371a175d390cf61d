#include "rieszlab/binary_io.hpp"

#include <bit>
#include <iostream>
#include <iterator>

#include "rieszlab/error.hpp"

namespace rieszlab::binary {

std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void Writer::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void Writer::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void Writer::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void Writer::f64s(std::span<const double> vs) {
  buf_.reserve(buf_.size() + 8 * vs.size());
  for (double v : vs) f64(v);
}

void Writer::raw(std::span<const unsigned char> bytes) {
  buf_.insert(buf_.end(), bytes.begin(), bytes.end());
}

void Writer::finish() { u64(fnv1a(buf_)); }

void Writer::write_to(std::ostream& os) const {
  os.write(reinterpret_cast<const char*>(buf_.data()),
           static_cast<std::streamsize>(buf_.size()));
}

Reader::Reader(std::vector<unsigned char> bytes) : buf_(std::move(bytes)) {}

Reader Reader::from_stream(std::istream& is) {
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  return Reader(std::move(bytes));
}

void Reader::need(std::size_t n) const {
  if (pos_ + n > buf_.size()) throw FormatError("binary reader: truncated input");
}

std::uint32_t Reader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}

std::uint64_t Reader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}

double Reader::f64() { return std::bit_cast<double>(u64()); }

void Reader::f64s(std::span<double> out) {
  need(8 * out.size());
  for (double& v : out) v = f64();
}

std::vector<unsigned char> Reader::raw(std::size_t n) {
  need(n);
  std::vector<unsigned char> out(buf_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                 buf_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
  pos_ += n;
  return out;
}

void Reader::verify_checksum() {
  const std::uint64_t expected = fnv1a(std::span(buf_.data(), pos_));
  const std::uint64_t stored = u64();
  if (stored != expected) throw FormatError("binary reader: checksum mismatch");
  if (pos_ != buf_.size()) throw FormatError("binary reader: trailing bytes after checksum");
}

}  // namespace rieszlab::binary
