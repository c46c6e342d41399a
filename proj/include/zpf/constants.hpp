#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zpf/errors.hpp"
#include "zpf/quantity.hpp"

namespace zpf {

namespace units {
// Conversion factors into SI, used only when reading or printing values.
inline constexpr double speed_of_light = 2.99792458e8;           // m s^-1, exact
inline constexpr double day = 86400.0;                            // s
inline constexpr double julian_year = 365.25 * day;               // s
inline constexpr double lightminute = 60.0 * speed_of_light;      // m
inline constexpr double lightyear = julian_year * speed_of_light; // m
inline constexpr double megaparsec = 3.26e6 * lightyear;          // m, 1 Mpc = 3.26e6 ly
inline constexpr double km_per_s_per_mpc = 1.0e3 / megaparsec;    // s^-1
} // namespace units

struct PhysicalConstant {
  std::string name;
  UncertainQuantity quantity;
  std::string unit;   // display unit of the SI value
  std::string source;
};

//! Value (SI) and/or relative uncertainty replacing a registry default.
struct ConstantOverride {
  std::string name;
  std::optional<double> value;
  std::optional<double> rel_sigma;
};

//! Named physical constants. Immutable once constructed.
class ConstantRegistry {
public:
  explicit ConstantRegistry(std::vector<PhysicalConstant> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (entries_[i].name == entries_[j].name)
          throw BadOverride("duplicate constant name '" + entries_[i].name + "'");
  }

  const std::vector<PhysicalConstant>& entries() const noexcept { return entries_; }

  const PhysicalConstant* find(std::string_view name) const noexcept {
    const auto it = std::find_if(entries_.begin(), entries_.end(),
                                 [&](const PhysicalConstant& p) { return p.name == name; });
    return it == entries_.end() ? nullptr : &*it;
  }

  const UncertainQuantity& get(std::string_view name) const {
    if (const auto* p = find(name)) return p->quantity;
    throw BadOverride("unknown constant '" + std::string(name) + "'");
  }

private:
  std::vector<PhysicalConstant> entries_;
};

//! CODATA 2006 fundamental constants, the Chandra Hubble constant
//! (77 km/s/Mpc) and the scenario parameters of the dissipation budget.
inline std::vector<PhysicalConstant> default_constants() {
  return {
      {"c", {units::speed_of_light, 0.0, dim::velocity()}, "m s^-1", "CODATA 2006 (exact)"},
      {"G", {6.67428e-11, 1e-4, dim::gravitational()}, "m^3 kg^-1 s^-2", "CODATA 2006"},
      {"hbar", {1.054571628e-34, 5e-5, dim::action()}, "J s", "CODATA 2006"},
      {"H", {2.49e-18, 0.15, dim::rate()}, "s^-1", "Chandra X-ray cluster survey, 77 km/s/Mpc"},
      {"M_sun", {1.98e30, 0.0, dim::mass()}, "kg", "solar mass"},
      {"r_p", {1.616e-35, 0.0, dim::length()}, "m", "Planck length, CODATA"},
      {"ell", {8.0 * units::lightminute, 0.0, dim::length()}, "m", "reference radius, 8 lightminutes"},
      {"t", {units::day, 0.0, dim::time()}, "s", "budget window, 1 day"},
  };
}

inline ConstantRegistry load_registry(const std::vector<ConstantOverride>& overrides = {}) {
  auto entries = default_constants();
  for (const auto& o : overrides) {
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const PhysicalConstant& p) { return p.name == o.name; });
    if (it == entries.end()) throw BadOverride("unknown constant '" + o.name + "'");
    double value = it->quantity.value();
    double rel = it->quantity.rel_sigma();
    if (o.value) {
      if (!(*o.value > 0.0) || !std::isfinite(*o.value))
        throw BadOverride("constant '" + o.name + "' must be positive and finite");
      value = *o.value;
    }
    if (o.rel_sigma) {
      if (!(*o.rel_sigma >= 0.0) || !std::isfinite(*o.rel_sigma))
        throw BadOverride("uncertainty of '" + o.name + "' must be >= 0");
      rel = *o.rel_sigma;
    }
    it->quantity = UncertainQuantity(value, rel, it->quantity.dim());
    it->source = "override";
  }
  return ConstantRegistry(std::move(entries));
}

namespace detail {

struct UnitDef {
  std::string_view name;
  double scale;
  Dimension dim;
};

inline const std::vector<UnitDef>& unit_table() {
  static const std::vector<UnitDef> table = {
      {"m", 1.0, dim::length()},
      {"km", 1e3, dim::length()},
      {"lightminutes", units::lightminute, dim::length()},
      {"lightminute", units::lightminute, dim::length()},
      {"lightyears", units::lightyear, dim::length()},
      {"ly", units::lightyear, dim::length()},
      {"Mpc", units::megaparsec, dim::length()},
      {"s", 1.0, dim::time()},
      {"day", units::day, dim::time()},
      {"days", units::day, dim::time()},
      {"kg", 1.0, dim::mass()},
      {"m/s", 1.0, dim::velocity()},
      {"km/s", 1e3, dim::velocity()},
      {"s^-1", 1.0, dim::rate()},
      {"1/s", 1.0, dim::rate()},
      {"km/s/Mpc", units::km_per_s_per_mpc, dim::rate()},
      {"J s", 1.0, dim::action()},
      {"J*s", 1.0, dim::action()},
      {"N m^2 kg^-2", 1.0, dim::gravitational()},
      {"m^3 kg^-1 s^-2", 1.0, dim::gravitational()},
  };
  return table;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

} // namespace detail

//! Converts `value` expressed in `unit` to SI, checking that the unit has
//! dimension `expected`.
inline double to_si(double value, std::string_view unit, const Dimension& expected) {
  for (const auto& u : detail::unit_table()) {
    if (u.name != unit) continue;
    if (u.dim != expected)
      throw BadOverride("unit '" + std::string(unit) + "' has dimension [" + u.dim.str() +
                        "], expected [" + expected.str() + "]");
    return value * u.scale;
  }
  throw BadOverride("unknown unit '" + std::string(unit) + "'");
}

//! Parses the constants config format:
//!
//!   # comment
//!   H = 77 km/s/Mpc
//!   e_H = 0.05
//!
//! One `name = value [unit]` per line. `e_<name>` sets the relative
//! uncertainty of <name>. Without a unit the value is taken as SI.
inline std::vector<ConstantOverride> parse_config(std::string_view text) {
  const auto defaults = default_constants();
  std::map<std::string, ConstantOverride> by_name;
  std::vector<std::string> order;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto where = "config line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigSyntax(where + "expected 'name = value [unit]'");
    std::string name(detail::trim(line.substr(0, eq)));
    const std::string_view rhs = detail::trim(line.substr(eq + 1));
    const auto space = rhs.find_first_of(" \t");
    const std::string_view number = rhs.substr(0, space);
    const std::string_view unit =
        space == std::string_view::npos ? std::string_view{} : detail::trim(rhs.substr(space));
    const auto value = detail::parse_double(number);
    if (!value) throw ConfigSyntax(where + "bad number '" + std::string(number) + "'");

    const bool is_sigma = name.rfind("e_", 0) == 0;
    const std::string target = is_sigma ? name.substr(2) : name;
    const auto def = std::find_if(defaults.begin(), defaults.end(),
                                  [&](const PhysicalConstant& p) { return p.name == target; });
    if (def == defaults.end()) throw BadOverride(where + "unknown constant '" + name + "'");

    auto [it, inserted] = by_name.try_emplace(target, ConstantOverride{target, {}, {}});
    if (inserted) order.push_back(target);
    if (is_sigma) {
      if (!unit.empty()) throw ConfigSyntax(where + "relative uncertainty takes no unit");
      if (*value < 0.0) throw BadOverride(where + "negative uncertainty for '" + target + "'");
      it->second.rel_sigma = *value;
    } else {
      const double si = unit.empty() ? *value : to_si(*value, unit, def->quantity.dim());
      if (!(si > 0.0)) throw BadOverride(where + "'" + target + "' must be positive");
      it->second.value = si;
    }
  }
  std::vector<ConstantOverride> out;
  for (const auto& n : order) out.push_back(by_name.at(n));
  return out;
}

//! Registry plus the cosmological quantities derived from it. The derived
//! values are recomputed on every call, never cached.
class CosmologyContext {
public:
  explicit CosmologyContext(ConstantRegistry registry = load_registry())
      : registry_(std::move(registry)) {}

  const ConstantRegistry& registry() const noexcept { return registry_; }

  const UncertainQuantity& c() const { return registry_.get("c"); }
  const UncertainQuantity& G() const { return registry_.get("G"); }
  const UncertainQuantity& hbar() const { return registry_.get("hbar"); }
  const UncertainQuantity& H() const { return registry_.get("H"); }
  const UncertainQuantity& solar_mass() const { return registry_.get("M_sun"); }
  const UncertainQuantity& planck_length() const { return registry_.get("r_p"); }
  const UncertainQuantity& reference_radius() const { return registry_.get("ell"); }
  const UncertainQuantity& window() const { return registry_.get("t"); }

  // rho_crit = 3 H^2 / (8 pi G)
  UncertainQuantity critical_density() const {
    return propagate({{UncertainQuantity::exact(3.0 / (8.0 * std::numbers::pi)), 1},
                      {H(), 2},
                      {G(), -1}});
  }

  // R = c / H
  UncertainQuantity hubble_radius() const { return propagate({{c(), 1}, {H(), -1}}); }

private:
  ConstantRegistry registry_;
};

} // namespace zpf
