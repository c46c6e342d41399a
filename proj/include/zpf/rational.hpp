#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "zpf/errors.hpp"

namespace zpf {

// Exact rational number with 64-bit numerator and denominator.
//
// Always normalized: den > 0 and gcd(|num|, den) == 1. Intermediate products
// are formed in 128 bits and any result that does not fit back into 64 bits
// throws RationalOverflow instead of wrapping.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT: implicit by intent
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  constexpr std::int64_t num() const noexcept { return num_; }
  constexpr std::int64_t den() const noexcept { return den_; }
  constexpr bool is_integer() const noexcept { return den_ == 1; }
  constexpr bool is_zero() const noexcept { return num_ == 0; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational operator-() const { return make(-static_cast<i128>(num_), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const i128 g = std::gcd(a.den_, b.den_);
    const i128 n = static_cast<i128>(a.num_) * (b.den_ / g) +
                   static_cast<i128>(b.num_) * (a.den_ / g);
    const i128 d = static_cast<i128>(a.den_ / g) * b.den_;
    return make(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw NonFinite("rational division by zero");
    return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  // Parses "7", "-2", "1.7", "5/3", "1e9", "2.5e-3" exactly.
  static Rational parse(std::string_view text);

  // Best rational approximation with denominator <= max_den (continued
  // fractions). Exact for doubles that are short decimals such as 1.7.
  static Rational approximate(double x, std::int64_t max_den = 1'000'000);

private:
  using i128 = __int128;

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw NonFinite("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 a = n < 0 ? -n : n, b = d;
    while (b != 0) { const i128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    constexpr i128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim)
      throw RationalOverflow("rational exponent arithmetic overflowed 64 bits");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { return InvalidParameter("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational n = parse(text.substr(0, slash));
    const Rational d = parse(text.substr(slash + 1));
    if (d.is_zero()) throw fail();
    return n / d;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  Rational value(0);
  int digits = 0;
  std::int64_t scale = 0; // power of ten applied at the end
  bool fraction = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      value = value * Rational(10) + Rational(ch - '0');
      if (fraction) --scale;
      ++digits;
    } else if (ch == '.' && !fraction) {
      fraction = true;
    } else {
      break;
    }
  }
  if (digits == 0) throw fail();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail();
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    if (i == text.size()) throw fail();
    std::int64_t e = 0;
    for (; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9' || e > 1000) throw fail();
      e = e * 10 + (text[i] - '0');
    }
    scale += eneg ? -e : e;
  }
  for (; scale > 0; --scale) value *= Rational(10);
  for (; scale < 0; ++scale) value /= Rational(10);
  return negative ? -value : value;
}

inline Rational Rational::approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw NonFinite("cannot approximate a non-finite value");
  // Convergents h/k of the continued fraction of x.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(rest);
    if (std::abs(a) > 9.0e15) break;
    const auto ai = static_cast<std::int64_t>(a);
    const __int128 h2 = static_cast<__int128>(ai) * h1 + h0;
    const __int128 k2 = static_cast<__int128>(ai) * k1 + k0;
    if (k2 > max_den || h2 > INT64_MAX || h2 < -INT64_MAX) break;
    h0 = h1; h1 = static_cast<std::int64_t>(h2);
    k0 = k1; k1 = static_cast<std::int64_t>(k2);
    const double frac = rest - a;
    if (frac < 1e-12 || static_cast<double>(h1) / static_cast<double>(k1) == x) break;
    rest = 1.0 / frac;
  }
  if (k1 == 0) throw RationalOverflow("value too large to approximate as a rational");
  return Rational(h1, k1);
}

} // namespace zpf
