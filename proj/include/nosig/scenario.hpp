// Copyright 2026 The nosig authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef NOSIG_SCENARIO_HPP
#define NOSIG_SCENARIO_HPP

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "nosig/gedanken.hpp"

namespace nosig::scenario {

/// Base of all scenario-file errors; carries the 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};
class UnknownKeyError : public ParseError {
 public:
  using ParseError::ParseError;
};
class MissingKeyError : public ParseError {
 public:
  using ParseError::ParseError;
};
class RangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

struct SweepSettings {
  std::size_t trials = 1000;
  std::size_t dim_field = 4;
  std::size_t dim_bob = 4;
};

struct ParsedScenario {
  gedanken::Scenario scenario;
  gedanken::TrapArray traps;
  std::size_t trap_branches = 0;  // entangled-branch count; coefficients drawn per run seed
  std::vector<gedanken::SphereArrangement> spheres;
  SweepSettings sweep;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::islower(static_cast<unsigned char>(c)) &&
        !std::isdigit(static_cast<unsigned char>(c)) && c != '_' && c != '.')
      return false;
  return true;
}

inline double parse_number(const std::string& value, std::size_t line, std::size_t col) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw SyntaxError("expected a decimal number, got '" + value + "'", line, col);
  return v;
}

inline std::size_t parse_count(const std::string& value, std::size_t line, std::size_t col) {
  for (char c : value)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw SyntaxError("expected a nonnegative integer, got '" + value + "'", line, col);
  if (value.empty()) throw SyntaxError("expected a nonnegative integer", line, col);
  return static_cast<std::size_t>(std::strtoull(value.c_str(), nullptr, 10));
}

struct RawKey {
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;
};

using Section = std::map<std::string, RawKey>;

// Key schema per section kind. Unknown keys are rejected.
inline const std::set<std::string>& scenario_keys() {
  static const std::set<std::string> k = {"regime",     "separation", "split",
                                          "t_alice",    "t_bob",      "dipole",
                                          "quadrupole", "q_bob",      "m_bob"};
  return k;
}
inline const std::set<std::string>& traps_keys() {
  static const std::set<std::string> k = {"count", "epsilon", "branches"};
  return k;
}
inline const std::set<std::string>& sphere_keys() {
  static const std::set<std::string> k = {"radius", "density", "phi", "solid_angle"};
  return k;
}
inline const std::set<std::string>& sweep_keys() {
  static const std::set<std::string> k = {"trials", "dim_field", "dim_bob"};
  return k;
}

}  // namespace detail

/// Parses the section-based key-value scenario format. Defaults per key:
///   [scenario] split=0, dipole=0, quadrupole=0, q_bob=1, m_bob=1
///   [traps]    count=1, epsilon=0.01, branches=0  (section optional)
///   [sphere.k] solid_angle=4pi                    (sections optional)
///   [sweep]    trials=1000, dim_field=4, dim_bob=4 (section optional)
/// Required: [scenario] with regime, separation, t_alice, t_bob and the
/// regime-appropriate moment; each sphere section needs radius, density, phi.
inline ParsedScenario parse(const std::string& text) {
  std::map<std::string, detail::Section> sections;
  std::map<std::string, std::size_t> section_lines;
  std::vector<std::string> sphere_order;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::string current;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::size_t col = raw.find_first_not_of(" \t") + 1;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw SyntaxError("unterminated section header", lineno, col);
      const std::string name = detail::trim(line.substr(1, line.size() - 2));
      const bool is_sphere = name.rfind("sphere.", 0) == 0 && name.size() > 7;
      if (name != "scenario" && name != "traps" && name != "sweep" && !is_sphere)
        throw UnknownKeyError("unknown section [" + name + "]", lineno, col);
      if (is_sphere) {
        const std::string idx = name.substr(7);
        for (char c : idx)
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw SyntaxError("sphere section index must be an integer", lineno, col);
        if (!sections.count(name)) sphere_order.push_back(name);
      }
      if (sections.count(name) && !sections[name].empty() && name.rfind("sphere.", 0) != 0) {
        // duplicate plain sections merge; keep first-seen line for diagnostics
      }
      current = name;
      sections[name];
      if (!section_lines.count(name)) section_lines[name] = lineno;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw SyntaxError("expected 'key = value'", lineno, col);
    if (current.empty())
      throw SyntaxError("key outside any section", lineno, col);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (!detail::is_identifier(key))
      throw SyntaxError("key must be a lowercase identifier", lineno, col);
    if (value.empty()) throw SyntaxError("missing value for key '" + key + "'", lineno, col);

    const auto& allowed = current == "scenario" ? detail::scenario_keys()
                          : current == "traps"  ? detail::traps_keys()
                          : current == "sweep"  ? detail::sweep_keys()
                                                : detail::sphere_keys();
    if (!allowed.count(key))
      throw UnknownKeyError("unknown key '" + key + "' in section [" + current + "]", lineno,
                            col);
    if (sections[current].count(key))
      throw SyntaxError("duplicate key '" + key + "'", lineno, col);
    sections[current][key] = detail::RawKey{value, lineno, col};
  }

  if (!sections.count("scenario"))
    throw MissingKeyError("missing required section [scenario]", 1, 1);

  ParsedScenario out;
  const detail::Section& sc = sections["scenario"];
  const std::size_t sc_line = section_lines["scenario"];

  auto require = [&](const detail::Section& sec, const std::string& key, std::size_t at_line) {
    auto it = sec.find(key);
    if (it == sec.end())
      throw MissingKeyError("missing required key '" + key + "'", at_line, 1);
    return it->second;
  };
  auto number_or = [&](const detail::Section& sec, const std::string& key, double def) {
    auto it = sec.find(key);
    if (it == sec.end()) return def;
    return detail::parse_number(it->second.value, it->second.line, it->second.column);
  };

  const detail::RawKey regime = require(sc, "regime", sc_line);
  if (regime.value == "em" || regime.value == "electromagnetic")
    out.scenario.regime = gedanken::Regime::Electromagnetic;
  else if (regime.value == "grav" || regime.value == "gravitational")
    out.scenario.regime = gedanken::Regime::Gravitational;
  else
    throw RangeError("regime must be one of em, grav", regime.line, regime.column);

  {
    const detail::RawKey sep = require(sc, "separation", sc_line);
    out.scenario.separation = detail::parse_number(sep.value, sep.line, sep.column);
    if (out.scenario.separation <= 0.0)
      throw RangeError("separation must be positive", sep.line, sep.column);
    const detail::RawKey ta = require(sc, "t_alice", sc_line);
    out.scenario.t_alice = detail::parse_number(ta.value, ta.line, ta.column);
    const detail::RawKey tb = require(sc, "t_bob", sc_line);
    out.scenario.t_bob = detail::parse_number(tb.value, tb.line, tb.column);
    if (out.scenario.regime == gedanken::Regime::Electromagnetic)
      require(sc, "dipole", sc_line);
    else
      require(sc, "quadrupole", sc_line);
    out.scenario.split = number_or(sc, "split", 0.0);
    out.scenario.dipole = number_or(sc, "dipole", 0.0);
    out.scenario.quadrupole = number_or(sc, "quadrupole", 0.0);
    out.scenario.q_bob = number_or(sc, "q_bob", 1.0);
    out.scenario.m_bob = number_or(sc, "m_bob", 1.0);
    for (const char* key : {"t_alice", "t_bob", "split", "dipole", "quadrupole", "q_bob"}) {
      auto it = sc.find(key);
      if (it != sc.end() &&
          detail::parse_number(it->second.value, it->second.line, it->second.column) < 0.0)
        throw RangeError(std::string(key) + " must be nonnegative", it->second.line,
                         it->second.column);
    }
    auto mb = sc.find("m_bob");
    if (mb != sc.end() && out.scenario.m_bob <= 0.0)
      throw RangeError("m_bob must be positive", mb->second.line, mb->second.column);
  }

  if (sections.count("traps")) {
    const detail::Section& tr = sections["traps"];
    auto cnt = tr.find("count");
    if (cnt != tr.end()) {
      out.traps.count = detail::parse_count(cnt->second.value, cnt->second.line,
                                            cnt->second.column);
      if (out.traps.count < 1)
        throw RangeError("count must be >= 1", cnt->second.line, cnt->second.column);
    }
    auto eps = tr.find("epsilon");
    out.traps.per_trap_epsilon = 0.01;
    if (eps != tr.end()) {
      out.traps.per_trap_epsilon =
          detail::parse_number(eps->second.value, eps->second.line, eps->second.column);
      if (out.traps.per_trap_epsilon < 0.0 || out.traps.per_trap_epsilon >= 1.0)
        throw RangeError("epsilon must lie in [0, 1)", eps->second.line, eps->second.column);
    }
    auto br = tr.find("branches");
    if (br != tr.end())
      out.trap_branches = detail::parse_count(br->second.value, br->second.line,
                                              br->second.column);
  } else {
    out.traps.per_trap_epsilon = 0.01;
  }

  for (const std::string& name : sphere_order) {
    const detail::Section& sp = sections[name];
    const std::size_t at = section_lines[name];
    gedanken::SphereArrangement sa;
    const detail::RawKey rad = require(sp, "radius", at);
    sa.radius = detail::parse_number(rad.value, rad.line, rad.column);
    if (sa.radius <= 0.0) throw RangeError("radius must be positive", rad.line, rad.column);
    const detail::RawKey den = require(sp, "density", at);
    sa.density = detail::parse_number(den.value, den.line, den.column);
    if (sa.density <= 0.0) throw RangeError("density must be positive", den.line, den.column);
    const detail::RawKey phi = require(sp, "phi", at);
    sa.phi = detail::parse_number(phi.value, phi.line, phi.column);
    if (sa.phi <= 0.0 || sa.phi >= 1.0)
      throw RangeError("phi must satisfy 0 < phi < 1 (spacelike separation)", phi.line,
                       phi.column);
    auto om = sp.find("solid_angle");
    if (om != sp.end()) {
      sa.solid_angle = detail::parse_number(om->second.value, om->second.line,
                                            om->second.column);
      if (sa.solid_angle <= 0.0 || sa.solid_angle > 4 * M_PI + 1e-12)
        throw RangeError("solid_angle must lie in (0, 4pi]", om->second.line,
                         om->second.column);
    }
    out.spheres.push_back(sa);
  }

  if (sections.count("sweep")) {
    const detail::Section& sw = sections["sweep"];
    auto get = [&](const char* key, std::size_t def, std::size_t lo, std::size_t hi) {
      auto it = sw.find(key);
      if (it == sw.end()) return def;
      const std::size_t v =
          detail::parse_count(it->second.value, it->second.line, it->second.column);
      if (v < lo || v > hi)
        throw RangeError(std::string(key) + " must lie in [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]",
                         it->second.line, it->second.column);
      return v;
    };
    out.sweep.trials = get("trials", 1000, 1, 1000000);
    out.sweep.dim_field = get("dim_field", 4, 2, 32);
    out.sweep.dim_bob = get("dim_bob", 4, 2, 32);
  }

  return out;
}

namespace detail {
inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/// Canonical serialization; parse(serialize(p)) reproduces p exactly.
inline std::string serialize(const ParsedScenario& p) {
  std::ostringstream os;
  os << "[scenario]\n";
  os << "regime = "
     << (p.scenario.regime == gedanken::Regime::Electromagnetic ? "em" : "grav") << "\n";
  os << "separation = " << detail::num(p.scenario.separation) << "\n";
  os << "split = " << detail::num(p.scenario.split) << "\n";
  os << "t_alice = " << detail::num(p.scenario.t_alice) << "\n";
  os << "t_bob = " << detail::num(p.scenario.t_bob) << "\n";
  os << "dipole = " << detail::num(p.scenario.dipole) << "\n";
  os << "quadrupole = " << detail::num(p.scenario.quadrupole) << "\n";
  os << "q_bob = " << detail::num(p.scenario.q_bob) << "\n";
  os << "m_bob = " << detail::num(p.scenario.m_bob) << "\n";
  os << "\n[traps]\n";
  os << "count = " << p.traps.count << "\n";
  os << "epsilon = " << detail::num(p.traps.per_trap_epsilon) << "\n";
  os << "branches = " << p.trap_branches << "\n";
  for (std::size_t i = 0; i < p.spheres.size(); ++i) {
    os << "\n[sphere." << (i + 1) << "]\n";
    os << "radius = " << detail::num(p.spheres[i].radius) << "\n";
    os << "density = " << detail::num(p.spheres[i].density) << "\n";
    os << "phi = " << detail::num(p.spheres[i].phi) << "\n";
    os << "solid_angle = " << detail::num(p.spheres[i].solid_angle) << "\n";
  }
  os << "\n[sweep]\n";
  os << "trials = " << p.sweep.trials << "\n";
  os << "dim_field = " << p.sweep.dim_field << "\n";
  os << "dim_bob = " << p.sweep.dim_bob << "\n";
  return os.str();
}

}  // namespace nosig::scenario

#endif  // NOSIG_SCENARIO_HPP
