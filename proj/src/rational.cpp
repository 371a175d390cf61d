#include "rieszlab/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace rieszlab {

namespace {

__extension__ typedef __int128 wide_int;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t l = checked_mul(a.den_ / g, b.den_);
  return Rational(checked_add(checked_mul(a.num_, l / a.den_), checked_mul(b.num_, l / b.den_)), l);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  // Denominators are positive, so both gcds are nonzero.
  const std::int64_t s1 = std::gcd(a.num_, b.den_);
  const std::int64_t s2 = std::gcd(b.num_, a.den_);
  return Rational(checked_mul(a.num_ / s1, b.num_ / s2), checked_mul(a.den_ / s2, b.den_ / s1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const wide_int l = static_cast<wide_int>(a.num_) * b.den_;
  const wide_int r = static_cast<wide_int>(b.num_) * a.den_;
  return l <=> r;
}

Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational critical_index_exact(const Rational& inv_p, int n) {
  if (n < 1) throw std::invalid_argument("critical_index_exact: dimension must be >= 1");
  if (inv_p < Rational(0) || inv_p > Rational(1)) {
    throw std::invalid_argument("critical_index_exact: need 1 <= p <= infinity");
  }
  const Rational half(1, 2);
  return max(Rational(n) * abs(half - inv_p) - half, Rational(0));
}

Rational ae_threshold_exact(const Rational& inv_p, int n) {
  return critical_index_exact(inv_p, n) / Rational(2);
}

}  // namespace rieszlab
