// Copyright 2026 The nosig authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Command-line driver: every closed form and sweep in the library is
// reproducible from a scenario file plus flags. The CLI performs no
// arithmetic of its own beyond formatting.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "nosig/channels.hpp"
#include "nosig/gedanken.hpp"
#include "nosig/nosignal.hpp"
#include "nosig/packets.hpp"
#include "nosig/report.hpp"
#include "nosig/scenario.hpp"

namespace {

using namespace nosig;
using report::brief;
using report::full;

struct CommonOpts {
  std::string scenario_path;
  std::string out_path;
  std::uint64_t seed = 1;
  std::size_t trials = 0;  // 0: use the scenario's sweep setting
  double tolerance = 1e-10;
  int jobs = 1;
};

std::string default_out(const std::string& command) {
  const char* dir = std::getenv("NOSIG_OUTDIR");
  std::string base = dir && *dir ? std::string(dir) + "/" : std::string();
  return base + command + ".csv";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read scenario file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

scenario::ParsedScenario load(const CommonOpts& opts, std::uint64_t& hash) {
  if (opts.scenario_path.empty()) {
    scenario::ParsedScenario p;  // defaults; dipole-free em scenario
    p.scenario.regime = gedanken::Regime::Electromagnetic;
    p.scenario.separation = 1.0;
    p.scenario.t_alice = 0.8;
    p.scenario.t_bob = 0.9;
    p.scenario.dipole = 0.5;
    hash = report::fnv1a64(scenario::serialize(p));
    return p;
  }
  const std::string text = read_file(opts.scenario_path);
  hash = report::fnv1a64(text);
  return scenario::parse(text);
}

int finish(const report::RunReport& rep, const report::CsvWriter& csv,
           const std::string& out_path) {
  csv.write(out_path);
  std::cout << "command: " << rep.command << "\n";
  std::cout << "input_hash: " << rep.input_hash << "\n";
  std::cout << "seed: " << rep.seed << "\n";
  for (const auto& c : rep.checks)
    std::cout << (c.pass ? "  ok   " : "  FAIL ") << c.name << " = " << brief(c.value)
              << " (threshold " << brief(c.threshold) << ")\n";
  std::cout << "csv: " << out_path << "\n";
  std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
  return rep.pass() ? 0 : 1;
}

const char* family_name(ChannelFamily f) {
  switch (f) {
    case ChannelFamily::Unitary: return "unitary";
    case ChannelFamily::Measurement: return "measurement";
    default: return "general";
  }
}

int cmd_verify_nosignal(const CommonOpts& opts) {
  report::RunReport rep;
  rep.command = "verify-nosignal";
  rep.seed = opts.seed;
  const scenario::ParsedScenario p = load(opts, rep.input_hash);
  const std::size_t trials = opts.trials ? opts.trials : p.sweep.trials;
  const HilbertDims dims({2, p.sweep.dim_field, p.sweep.dim_bob});

  report::CsvWriter csv;
  csv.header({"state_form", "family", "dim_field", "dim_bob", "trials", "max_trace_distance",
              "worst_seed", "pass"});
  const ChannelFamily families[] = {ChannelFamily::Unitary, ChannelFamily::Measurement,
                                    ChannelFamily::General};
  const std::size_t per_cell = std::max<std::size_t>(1, trials / 6);
  std::uint64_t seed_base = opts.seed;
  for (const char* form : {"branch", "entangled"}) {
    for (ChannelFamily family : families) {
      StateVector psi = [&] {
        if (std::string(form) == "entangled") return random_state(dims, seed_base);
        BranchState bs{{Complex(1 / std::sqrt(2.0)), Complex(1 / std::sqrt(2.0))},
                       random_state(HilbertDims({p.sweep.dim_field}), seed_base + 1),
                       random_state(HilbertDims({p.sweep.dim_field}), seed_base + 2),
                       random_state(HilbertDims({p.sweep.dim_bob}), seed_base + 3)};
        return assemble(bs);
      }();
      const ScanReport scan = signaling_scan(psi, family, per_cell, seed_base + 10, opts.jobs);
      const bool ok = scan.max_trace_distance < opts.tolerance;
      csv.row({form, family_name(family), std::to_string(p.sweep.dim_field),
               std::to_string(p.sweep.dim_bob), std::to_string(per_cell),
               full(scan.max_trace_distance), std::to_string(scan.worst_seed),
               ok ? "1" : "0"});
      rep.checks.push_back({std::string(form) + "/" + family_name(family),
                            scan.max_trace_distance, opts.tolerance, ok});
      seed_base += 1000 + per_cell;
    }
  }
  return finish(rep, csv, opts.out_path);
}

int cmd_window(const CommonOpts& opts, std::size_t grid) {
  report::RunReport rep;
  rep.command = "window";
  rep.seed = opts.seed;
  const scenario::ParsedScenario p = load(opts, rep.input_hash);
  (void)p;
  report::CsvWriter csv;
  csv.header({"regime", "grid", "points_checked", "counterexamples", "pass"});
  for (auto regime : {gedanken::Regime::Electromagnetic, gedanken::Regime::Gravitational}) {
    const auto cert = gedanken::no_superluminal_window(grid, regime);
    const char* name = regime == gedanken::Regime::Electromagnetic ? "em" : "grav";
    csv.row({name, std::to_string(grid), std::to_string(cert.points_checked),
             cert.ok() ? "0" : "1", cert.ok() ? "1" : "0"});
    rep.checks.push_back({std::string("window/") + name, cert.ok() ? 0.0 : 1.0, 0.5, cert.ok()});
  }
  return finish(rep, csv, opts.out_path);
}

int cmd_ntrap(const CommonOpts& opts) {
  report::RunReport rep;
  rep.command = "ntrap";
  rep.seed = opts.seed;
  const scenario::ParsedScenario p = load(opts, rep.input_hash);
  report::CsvWriter csv;
  csv.header({"n", "epsilon", "exact", "linearized", "valid", "brute_force", "matches"});
  bool all_ok = true;
  double worst = 0.0;
  for (std::size_t n = 1; n <= p.traps.count; ++n) {
    gedanken::TrapArray t{n, p.traps.per_trap_epsilon, {}};
    const auto ov = gedanken::ntrap_overlap(t);
    std::string brute = "", matches = "";
    if (n <= 8) {
      const double bf = gedanken::ntrap_brute_force(n, t.per_trap_epsilon);
      const double err = std::abs(bf - ov.exact);
      worst = std::max(worst, err);
      const bool ok = err < 1e-12;
      all_ok = all_ok && ok;
      brute = full(bf);
      matches = ok ? "1" : "0";
    }
    csv.row({std::to_string(n), full(t.per_trap_epsilon), full(ov.exact), full(ov.linearized),
             ov.valid ? "1" : "0", brute, matches});
  }
  rep.checks.push_back({"brute_force_max_error", worst, 1e-12, all_ok});
  return finish(rep, csv, opts.out_path);
}

int cmd_entangled_traps(const CommonOpts& opts) {
  report::RunReport rep;
  rep.command = "entangled-traps";
  rep.seed = opts.seed;
  const scenario::ParsedScenario p = load(opts, rep.input_hash);
  const std::size_t trials = opts.trials ? opts.trials : 100;
  const std::size_t branches = p.trap_branches ? p.trap_branches : 3;
  const std::size_t traps = std::min<std::size_t>(p.traps.count, 8);
  report::CsvWriter csv;
  csv.header({"trial", "seed", "branches", "exact", "approx", "cross_bound", "within_bound"});
  bool all_ok = true;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = opts.seed + i;
    std::mt19937_64 rng(s);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> coeffs(branches);
    double norm2 = 0.0;
    for (auto& a : coeffs) {
      a = Complex(gauss(rng), gauss(rng));
      norm2 += std::norm(a);
    }
    for (auto& a : coeffs) a /= std::sqrt(norm2);
    std::uniform_real_distribution<double> unif(0.0, 0.5);
    const double cross = (i % 2) ? unif(rng) : 0.0;
    const auto model =
        gedanken::make_branch_model(coeffs, traps, p.traps.per_trap_epsilon, cross);
    const auto ov = gedanken::entangled_traps_overlap(model);
    const bool ok = std::abs(ov.exact - ov.approx) <= ov.cross_bound + opts.tolerance;
    all_ok = all_ok && ok;
    csv.row({std::to_string(i), std::to_string(s), std::to_string(branches), full(ov.exact),
             full(ov.approx), full(ov.cross_bound), ok ? "1" : "0"});
  }
  rep.checks.push_back({"within_cross_bound", all_ok ? 1.0 : 0.0, 0.5, all_ok});
  return finish(rep, csv, opts.out_path);
}

int cmd_sphere(const CommonOpts& opts) {
  report::RunReport rep;
  rep.command = "sphere";
  rep.seed = opts.seed;
  const scenario::ParsedScenario p = load(opts, rep.input_hash);
  if (p.spheres.empty())
    throw std::runtime_error("sphere: scenario file has no [sphere.<k>] sections");
  report::CsvWriter csv;
  csv.header({"sphere", "radius", "density", "phi", "solid_angle", "displacement_bound",
              "single", "n_traps", "total", "min_pair_distance"});
  for (std::size_t i = 0; i < p.spheres.size(); ++i) {
    const auto& sa = p.spheres[i];
    const auto ov = gedanken::sphere_overlap(sa, p.scenario);
    const double dx = gedanken::sphere_displacement(sa, p.scenario);
    csv.row({std::to_string(i + 1), full(sa.radius), full(sa.density), full(sa.phi),
             full(sa.solid_angle), full(dx), full(ov.single), full(ov.n_traps), full(ov.total),
             ""});
  }
  const auto stack = gedanken::multi_sphere_stack(p.spheres, p.scenario);
  csv.row({"stack", "", "", "", "", "", "", "", full(stack.total),
           full(stack.min_pair_distance)});
  const bool spacelike = gedanken::release_events_spacelike(p.spheres, p.scenario.t_alice);
  rep.checks.push_back({"stack_total", stack.total, 1.0, stack.total > 0.0 && stack.total <= 1.0});
  rep.checks.push_back({"release_spacelike", spacelike ? 1.0 : 0.0, 0.5, spacelike});
  return finish(rep, csv, opts.out_path);
}

int cmd_packets(const CommonOpts& opts, double a, double delta, double eps) {
  report::RunReport rep;
  rep.command = "packets";
  rep.seed = opts.seed;
  std::uint64_t h = 0;
  if (!opts.scenario_path.empty()) load(opts, h);
  rep.input_hash = h;
  report::CsvWriter csv;
  csv.header({"item", "a", "delta", "eps", "exact", "printed_formula"});
  for (double mult : {0.5, 1.0, 2.0, 3.0}) {
    const double d = mult * delta;
    const double v = packets::single_overlap(packets::packet2d(0, 0, delta),
                                             packets::packet2d(d, 0, delta));
    csv.row({"single", full(d), full(delta), "", full(v), full(v)});
  }
  const auto pair = packets::entangled_pair_translation_overlap(a, delta, eps);
  csv.row({"pair", full(a), full(delta), full(eps), full(pair.exact), full(pair.printed_formula)});
  const double err = std::abs(pair.exact - pair.printed_formula);
  // the two expressions differ by the neglected normalization cross term,
  // so the agreement threshold scales with exp(-a^2/2delta^2)
  const double thresh = 3.0 * std::exp(-a * a / (2.0 * delta * delta)) + opts.tolerance;
  rep.checks.push_back({"pair_exact_vs_printed", err, thresh, err < thresh});
  return finish(rep, csv, opts.out_path);
}

int cmd_com_example(const CommonOpts& opts, double a, double delta) {
  report::RunReport rep;
  rep.command = "com-example";
  rep.seed = opts.seed;
  rep.input_hash = 0;
  const auto cmp = packets::com_counterexample(a, delta);
  report::CsvWriter csv;
  csv.header({"a", "delta", "com_mean_x", "com_mean_y", "com_spread", "exact_overlap",
              "printed_value", "both_small"});
  const bool both_small = cmp.full_overlap_exact < 1e-2 && cmp.printed_value < 1e-2;
  csv.row({full(a), full(delta), full(cmp.com_mean_1(0)), full(cmp.com_mean_1(1)),
           full(cmp.com_spread), full(cmp.full_overlap_exact), full(cmp.printed_value),
           both_small ? "1" : "0"});
  rep.checks.push_back({"almost_vanishes", std::max(cmp.full_overlap_exact, cmp.printed_value),
                        1e-2, both_small});
  return finish(rep, csv, opts.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional no-signaling simulator and decoherence estimates"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::size_t grid = 50;
  double pk_a = 1.0, pk_delta = 0.1, pk_eps = 0.01;
  double com_a = 5.0, com_delta = 1.0;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    auto* s = cmd->add_option("--scenario", opts.scenario_path, "scenario file path");
    if (needs_scenario) s->required();
    cmd->add_option("--seed", opts.seed, "base random seed");
    cmd->add_option("--trials", opts.trials, "trial count (default from scenario)");
    cmd->add_option("--tolerance", opts.tolerance, "pass/fail tolerance");
    cmd->add_option("--out", opts.out_path, "CSV output path");
    cmd->add_option("--jobs", opts.jobs, "worker threads for sweeps");
  };

  auto* verify = app.add_subcommand("verify-nosignal", "sweep random FB channels for signaling");
  add_common(verify, false);
  auto* window = app.add_subcommand("window", "exhaustive causal-window grid check");
  add_common(window, false);
  window->add_option("--grid", grid, "grid points per axis");
  auto* ntrap = app.add_subcommand("ntrap", "N-trap overlap accumulation");
  add_common(ntrap, false);
  auto* etraps = app.add_subcommand("entangled-traps", "entangled-trap overlap bounds");
  add_common(etraps, false);
  auto* sphere = app.add_subcommand("sphere", "sphere arrangement decoherence estimates");
  add_common(sphere, true);
  auto* pk = app.add_subcommand("packets", "Gaussian packet overlap closed forms");
  add_common(pk, false);
  pk->add_option("--a", pk_a, "pair displacement a");
  pk->add_option("--delta", pk_delta, "packet width delta");
  pk->add_option("--eps", pk_eps, "translation epsilon");
  auto* com = app.add_subcommand("com-example", "center-of-mass counterexample");
  add_common(com, false);
  com->add_option("--a", com_a, "configuration displacement a");
  com->add_option("--delta", com_delta, "packet width delta");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (opts.out_path.empty()) opts.out_path = default_out(sub->get_name());
    if (sub == verify) return cmd_verify_nosignal(opts);
    if (sub == window) return cmd_window(opts, grid);
    if (sub == ntrap) return cmd_ntrap(opts);
    if (sub == etraps) return cmd_entangled_traps(opts);
    if (sub == sphere) return cmd_sphere(opts);
    if (sub == pk) return cmd_packets(opts, pk_a, pk_delta, pk_eps);
    if (sub == com) return cmd_com_example(opts, com_a, com_delta);
  } catch (const scenario::ParseError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
