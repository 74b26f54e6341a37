// Copyright 2026 The nosig authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef NOSIG_PACKETS_HPP
#define NOSIG_PACKETS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace nosig::packets {

using Complex = std::complex<double>;

// Normalization convention used throughout: psi(x) proportional to
// exp(-x^2 / (4 delta^2)), i.e. delta is the position standard deviation.
// Under this convention the overlap of two equal-width packets displaced
// by r is exp(-r^2 / (8 delta^2)).

/// Gaussian wavepacket: center vector plus width delta.
struct GaussianPacket {
  Eigen::VectorXd center;
  double width = 1.0;

  GaussianPacket() = default;
  GaussianPacket(Eigen::VectorXd c, double w) : center(std::move(c)), width(w) {
    if (width <= 0.0) throw std::invalid_argument("GaussianPacket: width must be positive");
  }
};

inline GaussianPacket packet2d(double x, double y, double width) {
  Eigen::VectorXd c(2);
  c << x, y;
  return GaussianPacket(std::move(c), width);
}

/// Overlap of two equal-width packets: exp(-|c_p - c_q|^2 / (8 delta^2)).
inline double single_overlap(const GaussianPacket& p, const GaussianPacket& q) {
  if (p.center.size() != q.center.size())
    throw std::invalid_argument("single_overlap: spatial dimension mismatch");
  if (std::abs(p.width - q.width) > 1e-12 * std::max(p.width, q.width))
    throw std::invalid_argument("single_overlap: closed form requires equal widths");
  const double r2 = (p.center - q.center).squaredNorm();
  return std::exp(-r2 / (8.0 * p.width * p.width));
}

/// Product of single-particle packets, one per particle.
struct PacketProductState {
  std::vector<GaussianPacket> packets;
};

/// Product of the per-particle overlap factors.
inline double product_overlap(const PacketProductState& s1, const PacketProductState& s2) {
  if (s1.packets.empty() || s1.packets.size() != s2.packets.size())
    throw std::invalid_argument("product_overlap: mismatched particle counts");
  double prod = 1.0;
  for (std::size_t i = 0; i < s1.packets.size(); ++i)
    prod *= single_overlap(s1.packets[i], s2.packets[i]);
  return prod;
}

/// Superposition sum_k c_k |product_k> of packet product states.
struct GaussianSuperposition {
  std::vector<Complex> coefficients;
  std::vector<PacketProductState> terms;
};

/// <s1|s2> = sum_jk conj(c_j) c_k prod_i <p_ji|q_ki>; states need not be
/// normalized.
inline Complex superposition_overlap(const GaussianSuperposition& s1,
                                     const GaussianSuperposition& s2) {
  if (s1.coefficients.size() != s1.terms.size() || s2.coefficients.size() != s2.terms.size())
    throw std::invalid_argument("superposition_overlap: coefficient/term count mismatch");
  Complex acc = 0.0;
  for (std::size_t j = 0; j < s1.terms.size(); ++j)
    for (std::size_t k = 0; k < s2.terms.size(); ++k)
      acc += std::conj(s1.coefficients[j]) * s2.coefficients[k] *
             product_overlap(s1.terms[j], s2.terms[k]);
  return acc;
}

inline double superposition_norm(const GaussianSuperposition& s) {
  return std::sqrt(superposition_overlap(s, s).real());
}

/// The planar two-particle entangled state: the two particles sit at
/// (+a xhat, -a xhat) in one term and (+a yhat, -a yhat) in the other,
/// with equal coefficients.
inline GaussianSuperposition entangled_pair_state(double a, double delta) {
  const double c = 1.0 / std::sqrt(2.0);
  GaussianSuperposition s;
  s.coefficients = {c, c};
  s.terms = {{{packet2d(a, 0, delta), packet2d(-a, 0, delta)}},
             {{packet2d(0, a, delta), packet2d(0, -a, delta)}}};
  return s;
}

inline GaussianSuperposition translate_x(GaussianSuperposition s, double eps) {
  for (auto& term : s.terms)
    for (auto& p : term.packets) p.center(0) += eps;
  return s;
}

struct PairTranslationOverlap {
  double exact = 0.0;          // exactly renormalized overlap with the translate
  double printed_formula = 0.0;  // the printed two-term expression
};

/// Overlap of the entangled pair state with its translation by eps along x.
/// `exact` carries the cross-term renormalization 1 + exp(-a^2/2delta^2)
/// that the printed 1/sqrt(2) prefactor neglects; `printed_formula` is
/// exp(-(2a^2+eps^2)/4delta^2) + exp(-eps^2/4delta^2) as printed.
inline PairTranslationOverlap entangled_pair_translation_overlap(double a, double delta,
                                                                 double eps) {
  if (a <= 0.0 || delta <= 0.0 || eps < 0.0)
    throw std::invalid_argument("entangled_pair_translation_overlap: non-positive input");
  const GaussianSuperposition s = entangled_pair_state(a, delta);
  const GaussianSuperposition t = translate_x(s, eps);
  const double raw = superposition_overlap(s, t).real();
  const double norm2 = superposition_overlap(s, s).real();  // = 1 + exp(-a^2/2delta^2)
  PairTranslationOverlap out;
  out.exact = raw / norm2;
  const double d2 = delta * delta;
  out.printed_formula = std::exp(-(2.0 * a * a + eps * eps) / (4.0 * d2)) +
                      std::exp(-eps * eps / (4.0 * d2));
  return out;
}

struct ComComparison {
  Eigen::Vector2d com_mean_1 = Eigen::Vector2d::Zero();
  Eigen::Vector2d com_mean_2 = Eigen::Vector2d::Zero();
  double com_spread = 0.0;          // quadrature-combined width sqrt(2) * delta
  double full_overlap_exact = 0.0;  // product of per-particle factors
  double printed_value = 0.0;         // the printed exp(-a^2/4delta^2)
  bool discrepant = false;
};

/// The two-particle configurations (+a xhat, -a xhat) and (+a yhat, -a yhat)
/// share their center-of-mass statistics, yet their full overlap is tiny.
/// Under the convention pinned above the exact cross overlap is the square
/// of the per-particle factor, exp(-a^2/2delta^2); the printed value is
/// exp(-a^2/4delta^2). Both are reported.
inline ComComparison com_counterexample(double a, double delta) {
  if (a <= 0.0 || delta <= 0.0)
    throw std::invalid_argument("com_counterexample: non-positive input");
  ComComparison out;
  const PacketProductState cfg1{{packet2d(a, 0, delta), packet2d(-a, 0, delta)}};
  const PacketProductState cfg2{{packet2d(0, a, delta), packet2d(0, -a, delta)}};
  out.com_mean_1 = 0.5 * (cfg1.packets[0].center + cfg1.packets[1].center);
  out.com_mean_2 = 0.5 * (cfg2.packets[0].center + cfg2.packets[1].center);
  out.com_spread = std::sqrt(2.0) * delta;
  out.full_overlap_exact = product_overlap(cfg1, cfg2);
  out.printed_value = std::exp(-a * a / (4.0 * delta * delta));
  out.discrepant =
      std::abs(out.full_overlap_exact - out.printed_value) > 1e-12 * out.printed_value;
  return out;
}

}  // namespace nosig::packets

#endif  // NOSIG_PACKETS_HPP
