#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ldc {

/// Exact arbitrary-precision rational, always in lowest terms with a positive
/// denominator. The only numeric type used by the library.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral T>
  Rational(T value) : v_(static_cast<long>(value)) {}  // NOLINT: implicit by design of literals

  template <std::unsigned_integral T>
  Rational(T value) : v_(static_cast<unsigned long>(value)) {}  // NOLINT

  Rational(long num, long den);
  explicit Rational(mpq_class value);

  /// Accepts "p/q", an integer, or a finite decimal such as "-6.25".
  static Rational parse(std::string_view text);

  const mpq_class& raw() const noexcept { return v_; }

  int sign() const noexcept { return sgn(v_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const;

  std::string numerator() const;
  std::string denominator() const;

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;

  /// True when the value has a terminating decimal expansion.
  bool has_exact_decimal() const;

  /// Exact decimal when it terminates, otherwise rounded to `digits` places.
  std::string decimal(int digits = 12) const;

  double to_double() const { return v_.get_d(); }

  Rational abs() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace ldc

template <>
struct std::hash<ldc::Rational> {
  std::size_t operator()(const ldc::Rational& r) const noexcept { return r.hash(); }
};
