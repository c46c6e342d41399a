#pragma once

#include <cmath>
#include <initializer_list>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "zpf/errors.hpp"
#include "zpf/rational.hpp"

namespace zpf {

//! Exponents over the SI base dimensions length, mass and time. The other
//! SI bases never appear in this library and are fixed at zero.
struct Dimension {
  Rational length{};
  Rational mass{};
  Rational time{};

  constexpr bool dimensionless() const noexcept {
    return length.is_zero() && mass.is_zero() && time.is_zero();
  }

  friend bool operator==(const Dimension&, const Dimension&) = default;

  friend Dimension operator*(const Dimension& a, const Dimension& b) {
    return {a.length + b.length, a.mass + b.mass, a.time + b.time};
  }
  friend Dimension operator/(const Dimension& a, const Dimension& b) {
    return {a.length - b.length, a.mass - b.mass, a.time - b.time};
  }
  Dimension pow(const Rational& p) const { return {length * p, mass * p, time * p}; }

  //! Human readable form, e.g. "kg m^-1 s^-2"; "1" for dimensionless.
  std::string str() const {
    std::string out;
    auto term = [&out](const char* sym, const Rational& e) {
      if (e.is_zero()) return;
      if (!out.empty()) out += ' ';
      out += sym;
      if (e != Rational(1)) {
        out += '^';
        out += e.is_integer() ? e.str() : "(" + e.str() + ")";
      }
    };
    term("kg", mass);
    term("m", length);
    term("s", time);
    return out.empty() ? "1" : out;
  }
};

namespace dim {
inline Dimension none() { return {}; }
inline Dimension length() { return {1, 0, 0}; }
inline Dimension mass() { return {0, 1, 0}; }
inline Dimension time() { return {0, 0, 1}; }
inline Dimension wavenumber() { return {-1, 0, 0}; }
inline Dimension velocity() { return {1, 0, -1}; }
inline Dimension rate() { return {0, 0, -1}; }
inline Dimension energy() { return {2, 1, -2}; }
inline Dimension action() { return {2, 1, -1}; }
inline Dimension gravitational() { return {3, -1, -2}; }
inline Dimension density() { return {-3, 1, 0}; }
inline Dimension energy_density() { return {-1, 1, -2}; }      // J m^-3
inline Dimension spectral_density() { return {0, 1, -2}; }     // J m^-2
inline Dimension power_density() { return {-1, 1, -3}; }       // W m^-3
} // namespace dim

//! A finite real value in SI base units together with its dimension.
class Quantity {
public:
  Quantity() = default;
  Quantity(double value, Dimension d) : value_(value), dim_(d) {
    if (!std::isfinite(value_))
      throw NonFinite("non-finite quantity value (" + d.str() + ")");
  }
  static Quantity scalar(double v) { return {v, dim::none()}; }

  double value() const noexcept { return value_; }
  const Dimension& dim() const noexcept { return dim_; }

private:
  double value_ = 0.0;
  Dimension dim_{};
};

enum class BinaryOp { mul, div, add, sub };

inline Quantity combine(const Quantity& a, const Quantity& b, BinaryOp op) {
  switch (op) {
  case BinaryOp::mul: return {a.value() * b.value(), a.dim() * b.dim()};
  case BinaryOp::div:
    if (b.value() == 0.0) throw NonFinite("division by a zero quantity");
    return {a.value() / b.value(), a.dim() / b.dim()};
  case BinaryOp::add:
  case BinaryOp::sub:
    if (a.dim() != b.dim())
      throw DimensionMismatch("cannot add or subtract [" + a.dim().str() + "] and [" +
                              b.dim().str() + "]");
    return {op == BinaryOp::add ? a.value() + b.value() : a.value() - b.value(), a.dim()};
  }
  throw NonFinite("unknown binary operation");
}

inline Quantity operator*(const Quantity& a, const Quantity& b) { return combine(a, b, BinaryOp::mul); }
inline Quantity operator/(const Quantity& a, const Quantity& b) { return combine(a, b, BinaryOp::div); }
inline Quantity operator+(const Quantity& a, const Quantity& b) { return combine(a, b, BinaryOp::add); }
inline Quantity operator-(const Quantity& a, const Quantity& b) { return combine(a, b, BinaryOp::sub); }
inline Quantity operator*(double s, const Quantity& q) { return {s * q.value(), q.dim()}; }

namespace detail {
inline std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline double pow_value(double v, const Rational& p) {
  if (p.is_zero()) return 1.0;
  if (!p.is_integer() && v < 0.0)
    throw NegativeBase("non-integer power " + p.str() + " of negative value");
  if (v == 0.0 && p < Rational(0)) throw NonFinite("negative power of zero");
  if (p.is_integer()) return std::pow(v, static_cast<double>(p.num()));
  return std::pow(v, p.to_double());
}
} // namespace detail

inline Quantity power(const Quantity& q, const Rational& p) {
  return {detail::pow_value(q.value(), p), q.dim().pow(p)};
}

//! Value with a relative standard uncertainty. rel_sigma == 0 marks an
//! exact constant.
class UncertainQuantity {
public:
  UncertainQuantity() = default;
  UncertainQuantity(double value, double rel_sigma, Dimension d)
      : q_(value, d), rel_sigma_(rel_sigma) {
    if (!(rel_sigma_ >= 0.0) || !std::isfinite(rel_sigma_))
      throw InvalidParameter("relative uncertainty must be finite and >= 0");
  }
  UncertainQuantity(const Quantity& q, double rel_sigma = 0.0)
      : UncertainQuantity(q.value(), rel_sigma, q.dim()) {}
  static UncertainQuantity exact(double v, Dimension d = dim::none()) { return {v, 0.0, d}; }

  double value() const noexcept { return q_.value(); }
  double rel_sigma() const noexcept { return rel_sigma_; }
  double abs_sigma() const noexcept { return std::abs(q_.value()) * rel_sigma_; }
  const Dimension& dim() const noexcept { return q_.dim(); }
  const Quantity& quantity() const noexcept { return q_; }

private:
  Quantity q_{};
  double rel_sigma_ = 0.0;
};

//! One factor of a product-of-powers expression.
struct PowerTerm {
  UncertainQuantity base;
  Rational exponent;
};

//! First-order propagation through prod_i base_i^exponent_i assuming
//! uncorrelated inputs: rel_sigma = sqrt(sum (p_i e_i)^2).
inline UncertainQuantity propagate(std::span<const PowerTerm> terms) {
  double value = 1.0;
  double var = 0.0;
  Dimension d{};
  for (const auto& t : terms) {
    value *= detail::pow_value(t.base.value(), t.exponent);
    const double c = t.exponent.to_double() * t.base.rel_sigma();
    var += c * c;
    d = d * t.base.dim().pow(t.exponent);
  }
  return {value, std::sqrt(var), d};
}

inline UncertainQuantity propagate(std::initializer_list<PowerTerm> terms) {
  return propagate(std::span<const PowerTerm>(terms.begin(), terms.size()));
}

//! Per-term contributions |p_i| e_i to the relative uncertainty of a
//! product of powers, in input order.
inline std::vector<double> contributions(std::span<const PowerTerm> terms) {
  std::vector<double> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(std::abs(t.exponent.to_double()) * t.base.rel_sigma());
  return out;
}

} // namespace zpf
