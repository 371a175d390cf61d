#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace rieszlab {

/// Exact rational number with a positive denominator in lowest terms.
/// Overflow of the 64-bit numerator or denominator throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational abs(const Rational& r);
Rational max(const Rational& a, const Rational& b);

/// Exact critical index max{n |1/2 - 1/p| - 1/2, 0}, with the exponent
/// given through 1/p (so p = infinity is inv_p = 0). Requires 0 <= 1/p <= 1.
Rational critical_index_exact(const Rational& inv_p, int n);

/// Half the critical index.
Rational ae_threshold_exact(const Rational& inv_p, int n);

}  // namespace rieszlab
