#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rieszlab::binary {

/// 64-bit FNV-1a over a byte range, chainable through `seed`.
std::uint64_t fnv1a(std::span<const unsigned char> bytes,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Little-endian byte buffer with a trailing checksum on finish().
class Writer {
 public:
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void f64s(std::span<const double> vs);
  void raw(std::span<const unsigned char> bytes);
  /// Appends the FNV-1a checksum of everything written so far.
  void finish();
  const std::vector<unsigned char>& bytes() const noexcept { return buf_; }
  void write_to(std::ostream& os) const;

 private:
  std::vector<unsigned char> buf_;
};

/// Reads a buffer produced by Writer. Throws FormatError on truncation or
/// checksum mismatch.
class Reader {
 public:
  explicit Reader(std::vector<unsigned char> bytes);
  static Reader from_stream(std::istream& is);

  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  void f64s(std::span<double> out);
  std::vector<unsigned char> raw(std::size_t n);
  /// Checks the trailing checksum against everything read so far.
  void verify_checksum();

 private:
  void need(std::size_t n) const;
  std::vector<unsigned char> buf_;
  std::size_t pos_ = 0;
};

}  // namespace rieszlab::binary
