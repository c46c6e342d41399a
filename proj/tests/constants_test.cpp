#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "zpf/constants.hpp"

namespace {

using zpf::CosmologyContext;
using zpf::load_registry;
using zpf::testing::rel_diff;

// Frozen from direct double-precision evaluation of 3H^2/(8 pi G) and c/H
// with H = 2.49e-18 s^-1, G = 6.67428e-11, c = 299792458.
constexpr double kRhoDefault = 1.1088573179399804e-26;
constexpr double kRadiusDefault = 1.2039857751004017e26;

TEST(Registry, DefaultValuesAndUncertainties) {
  const auto reg = load_registry();
  EXPECT_EQ(reg.get("H").value(), 2.49e-18);
  EXPECT_EQ(reg.get("H").rel_sigma(), 0.15);
  EXPECT_EQ(reg.get("c").value(), 2.99792458e8);
  EXPECT_EQ(reg.get("c").rel_sigma(), 0.0);
  EXPECT_EQ(reg.get("G").value(), 6.67428e-11);
  EXPECT_EQ(reg.get("G").rel_sigma(), 1e-4);
  EXPECT_EQ(reg.get("hbar").value(), 1.054571628e-34);
  EXPECT_EQ(reg.get("hbar").rel_sigma(), 5e-5);
  EXPECT_EQ(reg.get("M_sun").value(), 1.98e30);
  EXPECT_EQ(reg.get("t").value(), 86400.0);
  EXPECT_DOUBLE_EQ(reg.get("ell").value(), 8.0 * 60.0 * 2.99792458e8);
  EXPECT_EQ(reg.get("r_p").value(), 1.616e-35);
}

TEST(Registry, ChandraHubbleValueConvertsToDefault) {
  // 77 km/s/Mpc with 1 Mpc = 3.26e6 lightyears rounds to 2.49e-18 s^-1.
  const double h = zpf::to_si(77.0, "km/s/Mpc", zpf::dim::rate());
  EXPECT_NEAR(h, 2.49e-18, 0.01e-18);
}

TEST(Registry, NamesAreUnique) {
  auto entries = zpf::default_constants();
  entries.push_back(entries.front());
  EXPECT_THROW(zpf::ConstantRegistry{entries}, zpf::BadOverride);
}

TEST(Registry, BadOverrides) {
  EXPECT_THROW(load_registry({{"Lambda", 1.0, {}}}), zpf::BadOverride);
  EXPECT_THROW(load_registry({{"H", -1.0, {}}}), zpf::BadOverride);
  EXPECT_THROW(load_registry({{"H", 0.0, {}}}), zpf::BadOverride);
  EXPECT_THROW(load_registry({{"G", {}, -1e-3}}), zpf::BadOverride);
}

TEST(Registry, OverrideHDoublesQuadruplesDensity) {
  const CosmologyContext base;
  const CosmologyContext doubled(load_registry({{"H", 2 * 2.49e-18, {}}}));
  EXPECT_LT(rel_diff(doubled.critical_density().value(), 4.0 * base.critical_density().value()), 1e-15);
  EXPECT_LT(rel_diff(doubled.hubble_radius().value(), 0.5 * base.hubble_radius().value()), 1e-15);
}

TEST(Registry, DeterministicForIdenticalOverrides) {
  const CosmologyContext a(load_registry({{"H", 2.2e-18, 0.05}}));
  const CosmologyContext b(load_registry({{"H", 2.2e-18, 0.05}}));
  EXPECT_EQ(a.critical_density().value(), b.critical_density().value());
  EXPECT_EQ(a.critical_density().rel_sigma(), b.critical_density().rel_sigma());
  EXPECT_EQ(a.hubble_radius().value(), b.hubble_radius().value());
}

TEST(CriticalDensity, DefaultsAndUncertainty) {
  const CosmologyContext ctx;
  const auto rho = ctx.critical_density();
  EXPECT_LT(rel_diff(rho.value(), kRhoDefault), 1e-14);
  EXPECT_NEAR(rho.value(), 1.11e-26, 0.01e-26);
  EXPECT_NEAR(rho.rel_sigma(), std::hypot(2 * 0.15, 1e-4), 1e-15);
  EXPECT_NEAR(rho.rel_sigma(), 0.30, 1e-6);
  EXPECT_EQ(rho.dim(), zpf::dim::density());
}

TEST(CriticalDensity, ExactWhenInputsExact) {
  const CosmologyContext ctx(load_registry({{"H", {}, 0.0}, {"G", {}, 0.0}}));
  EXPECT_EQ(ctx.critical_density().rel_sigma(), 0.0);
}

TEST(HubbleRadius, Defaults) {
  const CosmologyContext ctx;
  const auto R = ctx.hubble_radius();
  EXPECT_LT(rel_diff(R.value(), kRadiusDefault), 1e-14);
  EXPECT_NEAR(R.value(), 1.20e26, 0.01e26);
  EXPECT_DOUBLE_EQ(R.rel_sigma(), 0.15);
  EXPECT_EQ(R.dim(), zpf::dim::length());
}

TEST(Config, ParsesValuesUnitsAndUncertainties) {
  const auto ovr = zpf::parse_config(
      "# Planck 2018-ish Hubble constant\n"
      "H = 67.4 km/s/Mpc\n"
      "e_H = 0.01   # one percent\n"
      "\n"
      "ell = 1 lightminutes\n"
      "t = 2 days\n"
      "G = 6.674e-11\n");
  ASSERT_EQ(ovr.size(), 4u);
  const auto reg = load_registry(ovr);
  EXPECT_NEAR(reg.get("H").value(), 67.4 * zpf::units::km_per_s_per_mpc, 1e-30);
  EXPECT_EQ(reg.get("H").rel_sigma(), 0.01);
  EXPECT_DOUBLE_EQ(reg.get("ell").value(), 60.0 * 2.99792458e8);
  EXPECT_EQ(reg.get("t").value(), 2 * 86400.0);
  EXPECT_EQ(reg.get("G").value(), 6.674e-11);
  EXPECT_EQ(reg.find("H")->source, "override");
}

TEST(Config, Errors) {
  EXPECT_THROW(zpf::parse_config("Lambda = 1\n"), zpf::BadOverride);
  EXPECT_THROW(zpf::parse_config("H 2.4e-18\n"), zpf::ConfigSyntax);
  EXPECT_THROW(zpf::parse_config("H = fast\n"), zpf::ConfigSyntax);
  EXPECT_THROW(zpf::parse_config("H = 2 m\n"), zpf::BadOverride);      // wrong dimension
  EXPECT_THROW(zpf::parse_config("H = 2 furlongs\n"), zpf::BadOverride); // unknown unit
  EXPECT_THROW(zpf::parse_config("e_H = -0.1\n"), zpf::BadOverride);
  EXPECT_THROW(zpf::parse_config("H = -2e-18\n"), zpf::BadOverride);
}

} // namespace
