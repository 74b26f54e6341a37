// Copyright 2026 The nosig authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include "nosig/packets.hpp"
#include "oracle.hpp"

using namespace nosig::packets;

TEST_CASE("single packet overlap closed form matches quadrature") {
  struct Case {
    double dx, dy, width;
  };
  const Case cases[] = {{0, 0, 1}, {1, 0, 1}, {3, 4, 2}, {0.5, 0.25, 0.3}, {10, 0, 1.5}};
  for (const Case& c : cases) {
    const PacketProductState s1{{packet2d(0, 0, c.width)}};
    const PacketProductState s2{{packet2d(c.dx, c.dy, c.width)}};
    const oracle::Result r = oracle::overlap_by_quadrature(s1, s2);
    CHECK(r.converged);
    const double closed = single_overlap(s1.packets[0], s2.packets[0]);
    CHECK(std::abs(closed - r.value) < 1e-8 * std::max(1.0, std::abs(r.value)));
  }
}

TEST_CASE("single packet overlap basic properties") {
  const GaussianPacket p = packet2d(0, 0, 1.0);
  CHECK(single_overlap(p, p) == 1.0);
  // symmetry
  const GaussianPacket q = packet2d(2, 1, 1.0);
  CHECK(single_overlap(p, q) == single_overlap(q, p));
  // translation invariance: only the relative displacement matters
  const GaussianPacket ps = packet2d(5, -3, 1.0);
  const GaussianPacket qs = packet2d(7, -2, 1.0);
  CHECK(std::abs(single_overlap(p, q) - single_overlap(ps, qs)) < 1e-15);
  // monotone decreasing in the displacement
  double prev = 1.0;
  for (double r = 0.5; r <= 5.0; r += 0.5) {
    const double v = single_overlap(p, packet2d(r, 0, 1.0));
    CHECK(v < prev);
    prev = v;
  }
  // exp(-r^2/8 delta^2) at a hand-checked point: r = 2, delta = 1
  CHECK(std::abs(single_overlap(p, packet2d(2, 0, 1.0)) - std::exp(-0.5)) < 1e-15);
  CHECK_THROWS_AS(single_overlap(p, GaussianPacket(Eigen::VectorXd::Zero(3), 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(single_overlap(p, packet2d(0, 0, 2.0)), std::invalid_argument);
}

TEST_CASE("product overlap multiplies per-particle factors") {
  const PacketProductState s1{{packet2d(1, 0, 1), packet2d(-1, 0, 1)}};
  const PacketProductState s2{{packet2d(0, 1, 1), packet2d(0, -1, 1)}};
  // each factor is exp(-2/8) = exp(-0.25), product exp(-0.5)... with
  // |(1,0)-(0,1)|^2 = 2 per particle
  CHECK(std::abs(product_overlap(s1, s2) - std::exp(-0.5)) < 1e-15);
  const oracle::Result r = oracle::overlap_by_quadrature(s1, s2);
  CHECK(r.converged);
  CHECK(std::abs(product_overlap(s1, s2) - r.value) < 1e-8);
  CHECK_THROWS_AS(product_overlap(s1, PacketProductState{{packet2d(0, 0, 1)}}),
                  std::invalid_argument);
}

TEST_CASE("superposition overlap and norm against quadrature") {
  const double a = 2.0, delta = 0.7;
  const GaussianSuperposition s = entangled_pair_state(a, delta);
  SUBCASE("norm squared carries the cross term") {
    const double expected = 1.0 + std::exp(-a * a / (2.0 * delta * delta));
    CHECK(std::abs(superposition_overlap(s, s).real() - expected) < 1e-14);
    CHECK(std::abs(superposition_norm(s) - std::sqrt(expected)) < 1e-14);
  }
  SUBCASE("quadrature agrees with the closed form") {
    const GaussianSuperposition t = translate_x(s, 0.3);
    const oracle::Result r = oracle::superposition_overlap_by_quadrature(s, t);
    CHECK(r.converged);
    CHECK(std::abs(superposition_overlap(s, t).real() - r.value) < 1e-8);
  }
}

TEST_CASE("pair translation overlap reproduces the two-term expression") {
  const double a = 3.0, delta = 0.5, eps = 0.2;
  const auto out = entangled_pair_translation_overlap(a, delta, eps);
  const double d2 = delta * delta;
  const double t_same = std::exp(-eps * eps / (4.0 * d2));
  const double t_cross = std::exp(-(2.0 * a * a + eps * eps) / (4.0 * d2));
  CHECK(std::abs(out.printed_formula - (t_same + t_cross)) < 1e-15);
  // the raw overlap is (t_same + t_cross) before renormalization
  const double norm2 = 1.0 + std::exp(-a * a / (2.0 * d2));
  CHECK(std::abs(out.exact - (t_same + t_cross) / norm2) < 1e-14);
  // widely separated branches: both values collapse to the same-term factor
  const auto far = entangled_pair_translation_overlap(20.0, 0.5, 0.2);
  CHECK(std::abs(far.exact - far.printed_formula) < 1e-12);
  CHECK_THROWS_AS(entangled_pair_translation_overlap(-1, 1, 0), std::invalid_argument);
}

TEST_CASE("pair translation overlap decreases with the translation") {
  double prev = 2.0;
  for (double eps = 0.0; eps <= 2.0; eps += 0.25) {
    const auto out = entangled_pair_translation_overlap(2.0, 0.5, eps);
    CHECK(out.exact < prev);
    prev = out.exact;
  }
}

TEST_CASE("center-of-mass comparison flags the printed value") {
  const double a = 4.0, delta = 1.0;
  const auto out = com_counterexample(a, delta);
  CHECK(out.com_mean_1.norm() < 1e-15);
  CHECK(out.com_mean_2.norm() < 1e-15);
  CHECK(std::abs(out.com_spread - std::sqrt(2.0) * delta) < 1e-15);
  CHECK(std::abs(out.full_overlap_exact - std::exp(-a * a / (2.0 * delta * delta))) < 1e-15);
  CHECK(std::abs(out.printed_value - std::exp(-a * a / (4.0 * delta * delta))) < 1e-15);
  CHECK(out.discrepant);
  // the exact value is verified independently by quadrature
  const PacketProductState cfg1{{packet2d(a, 0, delta), packet2d(-a, 0, delta)}};
  const PacketProductState cfg2{{packet2d(0, a, delta), packet2d(0, -a, delta)}};
  const oracle::Result r = oracle::overlap_by_quadrature(cfg1, cfg2);
  CHECK(r.converged);
  CHECK(std::abs(out.full_overlap_exact - r.value) < 1e-8);
}

TEST_CASE("packet constructor rejects non-positive widths") {
  CHECK_THROWS_AS(packet2d(0, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(packet2d(0, 0, -1.0), std::invalid_argument);
}
