// Copyright 2026 The nosig authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef NOSIG_GEDANKEN_HPP
#define NOSIG_GEDANKEN_HPP

#include <cmath>
#include <limits>
#include <optional>

#include "nosig/core.hpp"

namespace nosig::gedanken {

enum class Regime { Electromagnetic, Gravitational };

/// All gedankenexperiment parameters, in units with c = hbar = 1.
struct Scenario {
  Regime regime = Regime::Electromagnetic;
  double separation = 1.0;    // D, Alice-Bob distance
  double split = 0.0;         // d, Alice superposition separation
  double t_alice = 0.0;       // T_A
  double t_bob = 0.0;         // T_B
  double dipole = 0.0;        // D_A = q_A d, effective dipole moment
  double quadrupole = 0.0;    // Q_A, effective quadrupole moment
  double q_bob = 1.0;
  double m_bob = 1.0;
};

/// Alice can recombine without radiating: D_A < T_A (em) or Q_A < T_A^2
/// (grav). Boundary cases count as failure (strict inequalities).
inline bool alice_coherence_ok(const Scenario& s) {
  return s.regime == Regime::Electromagnetic ? s.dipole < s.t_alice
                                             : s.quadrupole < s.t_alice * s.t_alice;
}

/// Bob's particle displacement exceeds its delocalization:
/// (D_A / D^3) T_B^2 > 1 (em) or (Q_A / D^4) T_B^2 > 1 (grav).
inline bool bob_can_decohere(const Scenario& s) {
  if (s.separation <= 0.0) throw std::invalid_argument("bob_can_decohere: D must be positive");
  const double d3 = s.separation * s.separation * s.separation;
  const double tb2 = s.t_bob * s.t_bob;
  return s.regime == Regime::Electromagnetic ? s.dipole / d3 * tb2 > 1.0
                                             : s.quadrupole / (d3 * s.separation) * tb2 > 1.0;
}

struct WindowCounterexample {
  Scenario point;
};

struct WindowCertificate {
  Regime regime = Regime::Electromagnetic;
  std::size_t grid_per_axis = 0;
  std::size_t points_checked = 0;
  std::optional<WindowCounterexample> counterexample;
  bool ok() const { return !counterexample.has_value(); }
};

/// Exhaustive grid check of the implication
///   (coherence condition and T_A < D and T_B < D)  =>  not decoherence condition.
/// The grid spans (0, 1]^4 in (moment, T_A, T_B, D); the implication is
/// scale invariant, so a normalized grid loses no generality.
inline WindowCertificate no_superluminal_window(std::size_t grid_per_axis, Regime regime) {
  if (grid_per_axis < 1)
    throw std::invalid_argument("no_superluminal_window: grid must be >= 1");
  WindowCertificate cert;
  cert.regime = regime;
  cert.grid_per_axis = grid_per_axis;
  const double step = 1.0 / static_cast<double>(grid_per_axis);
  for (std::size_t im = 1; im <= grid_per_axis; ++im)
    for (std::size_t ia = 1; ia <= grid_per_axis; ++ia)
      for (std::size_t ib = 1; ib <= grid_per_axis; ++ib)
        for (std::size_t id = 1; id <= grid_per_axis; ++id) {
          Scenario s;
          s.regime = regime;
          const double moment = im * step;
          (regime == Regime::Electromagnetic ? s.dipole : s.quadrupole) = moment;
          s.t_alice = ia * step;
          s.t_bob = ib * step;
          s.separation = id * step;
          if (s.t_alice >= s.separation || s.t_bob >= s.separation) continue;
          if (!alice_coherence_ok(s)) continue;
          ++cert.points_checked;
          if (bob_can_decohere(s)) {
            cert.counterexample = WindowCounterexample{s};
            return cert;
          }
        }
  return cert;
}

/// N traps with a common per-trap overlap deficit epsilon, optionally an
/// entangled superposition with coefficients {a_i}.
struct TrapArray {
  std::size_t count = 1;
  double per_trap_epsilon = 0.0;
  std::vector<Complex> coefficients;  // empty for the separable case
};

struct NTrapOverlap {
  double exact = 0.0;       // (1 - eps)^N
  double linearized = 0.0;  // max(0, 1 - N eps)
  bool valid = false;       // linearization regime N eps < 0.1
};

inline NTrapOverlap ntrap_overlap(const TrapArray& t) {
  if (t.per_trap_epsilon < 0.0 || t.per_trap_epsilon >= 1.0)
    throw std::invalid_argument("ntrap_overlap: epsilon must lie in [0, 1)");
  NTrapOverlap out;
  const double n = static_cast<double>(t.count);
  out.exact = std::pow(1.0 - t.per_trap_epsilon, n);
  out.linearized = std::max(0.0, 1.0 - n * t.per_trap_epsilon);
  out.valid = n * t.per_trap_epsilon < 0.1;
  return out;
}

/// Explicit tensor model of the N-trap state
///   (|L>_A |L_1>...|L_N> + |R>_A |R_1>...|R_N>) / sqrt(2)
/// with per-trap two-state systems chosen so <L_i|R_i> = 1 - eps; Alice's
/// visibility from the reduced density matrix must equal (1 - eps)^N.
inline double ntrap_brute_force(std::size_t n, double eps) {
  if (n < 1 || n > 8) throw std::invalid_argument("ntrap_brute_force: N must lie in [1, 8]");
  if (eps < 0.0 || eps >= 1.0)
    throw std::invalid_argument("ntrap_brute_force: epsilon must lie in [0, 1)");
  const HilbertDims trap({2});
  Vector left_trap(2), right_trap(2);
  left_trap << 1.0, 0.0;
  const double c = 1.0 - eps;
  right_trap << c, std::sqrt(std::max(0.0, 1.0 - c * c));
  StateVector left = basis_state(HilbertDims({2}), 0);
  StateVector right = basis_state(HilbertDims({2}), 1);
  for (std::size_t i = 0; i < n; ++i) {
    left = tensor(left, StateVector(left_trap, trap));
    right = tensor(right, StateVector(right_trap, trap));
  }
  const StateVector global(
      (left.amplitudes + right.amplitudes) / std::sqrt(2.0), left.dims);
  return visibility(reduced_density(global, SectorIndex{0}));
}

/// Entangled-trap model: each branch i is a separable N-trap state given by
/// per-trap left/right single-trap vectors.
struct EntangledTrapModel {
  std::vector<Complex> coefficients;         // a_i, sum |a_i|^2 = 1
  std::vector<std::vector<Vector>> left;     // left[i][t]: branch i, trap t
  std::vector<std::vector<Vector>> right;
};

struct EntangledTrapOverlap {
  double exact = 0.0;        // |sum_ij conj(a_i) a_j prod_t <L^i_t|R^j_t>|
  double approx = 0.0;       // |sum_i |a_i|^2 prod_t <L^i_t|R^i_t>|
  double cross_bound = 0.0;  // sum_{i!=j} |a_i a_j| * max cross product overlap
};

inline EntangledTrapOverlap entangled_traps_overlap(const EntangledTrapModel& m,
                                                    double tol = 1e-10) {
  const std::size_t branches = m.coefficients.size();
  if (branches == 0 || m.left.size() != branches || m.right.size() != branches)
    throw std::invalid_argument("entangled_traps_overlap: inconsistent branch structure");
  double norm2 = 0.0;
  for (const Complex& a : m.coefficients) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > tol)
    throw std::invalid_argument("entangled_traps_overlap: coefficients not normalized");

  auto branch_product = [&](std::size_t i, std::size_t j) {
    const auto& li = m.left[i];
    const auto& rj = m.right[j];
    if (li.size() != rj.size())
      throw std::invalid_argument("entangled_traps_overlap: trap count mismatch");
    Complex prod = 1.0;
    for (std::size_t t = 0; t < li.size(); ++t) prod *= li[t].dot(rj[t]);
    return prod;
  };

  Complex full = 0.0, diag = 0.0;
  double max_cross = 0.0, cross_coeff = 0.0;
  for (std::size_t i = 0; i < branches; ++i)
    for (std::size_t j = 0; j < branches; ++j) {
      const Complex term = std::conj(m.coefficients[i]) * m.coefficients[j] * branch_product(i, j);
      full += term;
      if (i == j) {
        diag += term;
      } else {
        max_cross = std::max(max_cross, std::abs(branch_product(i, j)));
        cross_coeff += std::abs(m.coefficients[i]) * std::abs(m.coefficients[j]);
      }
    }
  EntangledTrapOverlap out;
  out.exact = std::abs(full);
  out.approx = std::abs(diag);
  out.cross_bound = cross_coeff * max_cross;
  return out;
}

/// Builds a model whose branches occupy per-trap 2D subspaces with a shared
/// axis. cross = 0 gives exactly orthogonal cross branches and diagonal
/// overlap (1-eps)^N; cross in (0,1) sets the per-trap cross overlap.
inline EntangledTrapModel make_branch_model(std::vector<Complex> coefficients, std::size_t traps,
                                            double eps, double cross = 0.0) {
  const std::size_t branches = coefficients.size();
  if (branches == 0) throw std::invalid_argument("make_branch_model: no branches");
  if (traps == 0 || traps > 8)
    throw std::invalid_argument("make_branch_model: traps must lie in [1, 8]");
  if (cross < 0.0 || cross >= 1.0)
    throw std::invalid_argument("make_branch_model: cross must lie in [0, 1)");
  const std::size_t trap_dim = 2 * branches + 1;  // last axis shared across branches
  const double beta = std::sqrt(cross);
  const double alpha = std::sqrt(1.0 - cross);
  const double c = 1.0 - eps;
  EntangledTrapModel m;
  m.coefficients = std::move(coefficients);
  m.left.resize(branches);
  m.right.resize(branches);
  for (std::size_t i = 0; i < branches; ++i) {
    Vector l = Vector::Zero(static_cast<Eigen::Index>(trap_dim));
    l(static_cast<Eigen::Index>(2 * i)) = alpha;
    l(static_cast<Eigen::Index>(trap_dim - 1)) = beta;
    Vector r = Vector::Zero(static_cast<Eigen::Index>(trap_dim));
    r(static_cast<Eigen::Index>(2 * i)) = alpha * c;
    r(static_cast<Eigen::Index>(2 * i + 1)) = alpha * std::sqrt(std::max(0.0, 1.0 - c * c));
    r(static_cast<Eigen::Index>(trap_dim - 1)) = beta;
    m.left[i].assign(traps, l);
    m.right[i].assign(traps, r);
  }
  return m;
}

/// Traps spread over a sphere of radius l centered on Alice.
struct SphereArrangement {
  double radius = 1.0;           // l
  double density = 1.0;          // rho, traps per unit area
  double phi = 0.5;              // T_B = phi * l; phi < 1 for spacelike separation
  double solid_angle = 4 * M_PI; // Omega, patch coverage

  void check() const {
    if (radius <= 0.0) throw std::invalid_argument("SphereArrangement: radius must be positive");
    if (density <= 0.0) throw std::invalid_argument("SphereArrangement: density must be positive");
    if (phi <= 0.0 || phi > 1.0)
      throw std::invalid_argument("SphereArrangement: phi must lie in (0, 1]");
    if (solid_angle <= 0.0 || solid_angle > 4 * M_PI + 1e-12)
      throw std::invalid_argument("SphereArrangement: solid angle must lie in (0, 4pi]");
  }
};

/// Lower bound on the trap-particle displacement, (q_B/m_B) (D_A/l) phi^2.
/// Electromagnetic regime only; the gravitational analog is not defined.
inline double sphere_displacement(const SphereArrangement& sa, const Scenario& s) {
  sa.check();
  if (s.regime != Regime::Electromagnetic)
    throw std::invalid_argument("sphere_displacement: electromagnetic regime only");
  return s.q_bob / s.m_bob * s.dipole * sa.phi * sa.phi / sa.radius;
}

struct SphereOverlap {
  double single = 0.0;   // exp(-D_A^2 phi^4 / 8 l^2) per-trap overlap bound
  double n_traps = 0.0;  // rho Omega l^2, kept real-valued
  double total = 0.0;    // exp(-Omega rho D_A^2 phi^4 / 8), independent of l
};

/// Appendix-style sphere estimate. `total` is evaluated from the closed
/// form with the radius cancelled, so it is bit-identical across radii.
inline SphereOverlap sphere_overlap(const SphereArrangement& sa, const Scenario& s) {
  sa.check();
  if (s.regime != Regime::Electromagnetic)
    throw std::invalid_argument("sphere_overlap: electromagnetic regime only");
  SphereOverlap out;
  const double da2 = s.dipole * s.dipole;
  const double phi4 = std::pow(sa.phi, 4);
  out.single = std::exp(-da2 * phi4 / (8.0 * sa.radius * sa.radius));
  out.n_traps = sa.density * sa.solid_angle * sa.radius * sa.radius;
  out.total = std::exp(-sa.solid_angle * sa.density * da2 * phi4 / 8.0);
  return out;
}

struct SphereStack {
  double total = 0.0;              // product of per-sphere totals
  double min_pair_distance = 0.0;  // over within-sphere and between-sphere pairs
};

/// Stack of concentric spheres, ordered by radius. Within a sphere the
/// typical nearest-neighbor distance is rho^{-1/2}; between spheres it is
/// the radial gap.
inline SphereStack multi_sphere_stack(const std::vector<SphereArrangement>& spheres,
                                      const Scenario& s) {
  if (spheres.empty()) throw std::invalid_argument("multi_sphere_stack: empty stack");
  SphereStack out;
  out.total = 1.0;
  out.min_pair_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    out.total *= sphere_overlap(spheres[i], s).total;
    out.min_pair_distance =
        std::min(out.min_pair_distance, 1.0 / std::sqrt(spheres[i].density));
    if (i > 0) {
      const double gap = spheres[i].radius - spheres[i - 1].radius;
      if (gap <= 0.0) throw std::invalid_argument("multi_sphere_stack: overlapping radii");
      out.min_pair_distance = std::min(out.min_pair_distance, gap);
    }
  }
  return out;
}

struct SpacetimeEvent {
  double t = 0.0;
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
};

/// True iff the separation is spacelike: |x1 - x2| > |t1 - t2| (c = 1).
inline bool spacelike_separated(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
  return (e1.x - e2.x).norm() > std::abs(e1.t - e2.t);
}

/// Release coordination: an inward light signal leaves the outermost sphere
/// at t = 0, so the sphere at radius l releases at t = l_max - l. Checks
/// every release event against both endpoints of Alice's interval [0, T_A]
/// at the origin; spacelike separation from the endpoints implies it for
/// the whole interval.
inline bool release_events_spacelike(const std::vector<SphereArrangement>& spheres,
                                     double t_alice) {
  if (spheres.empty()) throw std::invalid_argument("release_events_spacelike: empty stack");
  const double l_max = spheres.back().radius;
  for (const SphereArrangement& sa : spheres) {
    const SpacetimeEvent release{l_max - sa.radius, Eigen::Vector3d(sa.radius, 0, 0)};
    const SpacetimeEvent alice_start{0.0, Eigen::Vector3d::Zero()};
    const SpacetimeEvent alice_end{t_alice, Eigen::Vector3d::Zero()};
    if (!spacelike_separated(release, alice_start) || !spacelike_separated(release, alice_end))
      return false;
  }
  return true;
}

}  // namespace nosig::gedanken

#endif  // NOSIG_GEDANKEN_HPP
