#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "zpf/constants.hpp"
#include "zpf/dissipation.hpp"
#include "zpf/errors.hpp"
#include "zpf/transition.hpp"

namespace zpf {

enum class OutputFormat { table, csv };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "table") return OutputFormat::table;
  if (s == "csv") return OutputFormat::csv;
  throw InvalidParameter("format must be 'table' or 'csv', got '" + std::string(s) + "'");
}

//! Optional columns on top of a, kappa, lambda0, sigma and k0.
struct ExtraOutputs {
  bool epsilon = false;
  bool N = false;
  bool Ns = false;

  bool any() const { return epsilon || N || Ns; }
};

struct SweepSpec {
  std::vector<Rational> slopes;
  std::vector<double> kappas;
  ExtraOutputs extras;
  double e_kappa = 0.0;
  N0Mode n0_mode = N0Mode::published;
};

struct ReportRow {
  Rational a;
  double kappa = 0.0;
  std::optional<TransitionResult> transition;
  std::optional<DissipationBudget> budget;
  std::optional<std::string> error_kind;
  std::optional<std::string> error_message;
};

//! Slopes outer, kappas inner. An invalid cell yields a row carrying the
//! error instead of aborting the sweep.
inline std::vector<ReportRow> run_sweep(const SweepSpec& spec, const CosmologyContext& ctx) {
  if (spec.slopes.empty() || spec.kappas.empty())
    throw EmptySweep("sweep needs at least one slope and one kappa");
  std::vector<ReportRow> rows;
  rows.reserve(spec.slopes.size() * spec.kappas.size());
  for (const auto& a : spec.slopes) {
    for (double kappa : spec.kappas) {
      ReportRow row;
      row.a = a;
      row.kappa = kappa;
      try {
        row.transition = transition_scale(a, kappa, ctx, spec.e_kappa);
        if (spec.extras.any()) row.budget = solar_budget(kappa, a, ctx, std::nullopt, spec.n0_mode);
      } catch (const Error& e) {
        row.transition.reset();
        row.budget.reset();
        row.error_kind = e.kind();
        row.error_message = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Number formatting.

//! Scientific notation with `sigfigs` significant figures, lowercase `e`
//! and a bare exponent: 5172.3 -> "5.17e3", 1.4e-5 -> "1.40e-5".
inline std::string format_sig(double x, int sigfigs) {
  sigfigs = std::clamp(sigfigs, 1, 17);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", sigfigs - 1, x);
  std::string s(buf);
  const auto e = s.find('e');
  if (e == std::string::npos) return s; // inf / nan
  std::string mant = s.substr(0, e);
  std::string exp = s.substr(e + 1);
  bool neg = false;
  if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
    neg = exp[0] == '-';
    exp.erase(0, 1);
  }
  exp.erase(0, std::min(exp.find_first_not_of('0'), exp.size() - 1));
  return mant + "e" + (neg ? "-" : "") + exp;
}

//! Shortest decimal that round-trips, e.g. 1.7 -> "1.7", 1e-5 -> "1e-05".
inline std::string format_shortest(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

//! Terminating decimals print as decimals ("1.7"), others as fractions ("5/3").
inline std::string format_slope(const Rational& a) {
  std::int64_t d = a.den();
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1 ? format_shortest(a.to_double()) : a.str();
}

namespace detail {

inline std::vector<std::string> header(const ExtraOutputs& x, OutputFormat f) {
  std::vector<std::string> h;
  if (f == OutputFormat::csv) {
    h = {"a", "kappa", "lambda0_m", "sigma_m", "k0_per_m"};
    if (x.epsilon) h.emplace_back("epsilon_W_per_m3");
    if (x.N) h.emplace_back("N");
    if (x.Ns) h.emplace_back("Ns");
  } else {
    h = {"a", "kappa", "lambda0 [m]", "sigma [m]", "k0 [1/m]"};
    if (x.epsilon) h.emplace_back("epsilon [W/m^3]");
    if (x.N) h.emplace_back("N");
    if (x.Ns) h.emplace_back("Ns");
  }
  return h;
}

inline std::vector<std::string> cells(const ReportRow& r, const ExtraOutputs& x, int sigfigs,
                                      OutputFormat f) {
  std::vector<std::string> c = {format_slope(r.a), format_shortest(r.kappa)};
  if (!r.transition) {
    c.push_back(r.error_kind.value_or("error"));
    if (f == OutputFormat::table && r.error_message) c.back() += ": " + *r.error_message;
    return c;
  }
  const auto& t = *r.transition;
  c.push_back(format_sig(t.lambda0.value(), sigfigs));
  c.push_back(format_sig(t.abs_sigma(), sigfigs));
  c.push_back(format_sig(t.k0.value(), sigfigs));
  if (r.budget) {
    if (x.epsilon) c.push_back(format_sig(r.budget->epsilon.value(), sigfigs));
    if (x.N) c.push_back(format_sig(r.budget->N, sigfigs));
    if (x.Ns) c.push_back(format_sig(r.budget->Ns, sigfigs));
  }
  return c;
}

} // namespace detail

//! CSV: header `a,kappa,lambda0_m,sigma_m,k0_per_m` (plus requested extra
//! columns), one newline-terminated row per cell. An error row puts the
//! error kind in the lambda0_m column and leaves the rest empty.
//! Table: right-aligned fixed-width columns.
inline std::string render(const std::vector<ReportRow>& rows, OutputFormat format,
                          const ExtraOutputs& extras = {}, int sigfigs = 3) {
  const auto head = detail::header(extras, format);
  std::vector<std::vector<std::string>> body;
  body.reserve(rows.size());
  for (const auto& r : rows) body.push_back(detail::cells(r, extras, sigfigs, format));

  std::string out;
  if (format == OutputFormat::csv) {
    auto line = [&](const std::vector<std::string>& v) {
      for (std::size_t i = 0; i < head.size(); ++i) {
        if (i) out += ',';
        if (i < v.size()) out += v[i];
      }
      out += '\n';
    };
    line(head);
    for (const auto& b : body) line(b);
    return out;
  }

  std::vector<std::size_t> width(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
  for (const auto& b : body)
    for (std::size_t i = 0; i < b.size() && i < head.size(); ++i)
      if (!(i == 2 && b.size() == 3)) width[i] = std::max(width[i], b[i].size());
  auto pad = [](const std::string& s, std::size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
  };
  auto line = [&](const std::vector<std::string>& v) {
    std::string l;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) l += "  ";
      // An error message spans the remaining columns, left aligned.
      l += (i == 2 && v.size() == 3) ? v[i] : pad(v[i], width[i]);
    }
    out += l + '\n';
  };
  line(head);
  for (const auto& b : body) line(b);
  return out;
}

} // namespace zpf
