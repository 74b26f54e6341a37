// Copyright 2026 The nosig authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef NOSIG_NOSIGNAL_HPP
#define NOSIG_NOSIGNAL_HPP

#include <array>
#include <functional>
#include <thread>

#include "nosig/channels.hpp"
#include "nosig/core.hpp"

namespace nosig {

/// Tripartite (Alice x field x Bob) state in branch form:
///   sum_i alpha_i |i>_A (x) |Psi_i>_F (x) |B0>_B .
/// The Alice paths are orthogonal basis states, so the assembled state is
/// normalized iff |alpha_0|^2 + |alpha_1|^2 = 1 with normalized branch
/// fields, regardless of the field-branch overlap.
struct BranchState {
  std::array<Complex, 2> alice_amps;
  StateVector field_left;   // |Psi_1>
  StateVector field_right;  // |Psi_2>
  StateVector bob;          // |B0>
};

/// Builds the global state on dims [2, dim_F, dim_B].
inline StateVector assemble(const BranchState& bs,
                            double tol = default_tolerances().invariance) {
  if (!(bs.field_left.dims == bs.field_right.dims))
    throw std::invalid_argument("assemble: field branches have mismatched dims");
  if (!bs.field_left.is_normalized(tol) || !bs.field_right.is_normalized(tol))
    throw std::invalid_argument("assemble: field branches must be normalized");
  if (!bs.bob.is_normalized(tol))
    throw std::invalid_argument("assemble: Bob state must be normalized");
  const double amp2 =
      std::norm(bs.alice_amps[0]) + std::norm(bs.alice_amps[1]);
  if (std::abs(amp2 - 1.0) > tol)
    throw std::invalid_argument("assemble: Alice amplitudes are not normalized");

  const HilbertDims qubit({2});
  StateVector left = tensor(tensor(basis_state(qubit, 0), bs.field_left), bs.bob);
  StateVector right = tensor(tensor(basis_state(qubit, 1), bs.field_right), bs.bob);
  return StateVector(bs.alice_amps[0] * left.amplitudes + bs.alice_amps[1] * right.amplitudes,
                     left.dims);
}

/// Alice's reduced state after the channel acts on the non-Alice sector,
/// computed on the pure state: rho_A' = sum_i Tr_FB |K_i psi><K_i psi|.
/// Cross-checked in the tests against the dense channel application.
inline DensityMatrix reduced_after_channel(const StateVector& psi, const KrausChannel& ch,
                                           double tol = default_tolerances().invariance) {
  if (ch.sector.contains(0))
    throw std::invalid_argument("channel acts on Alice's sector; locality premise violated");
  const ValidationReport rep = validate(ch, tol);
  if (!rep.ok)
    throw std::invalid_argument("reduced_after_channel: invalid channel: " + rep.message);
  const auto ops = lifted_operators(ch, psi.dims);
  const std::size_t da = psi.dims[0];
  const Eigen::Index rest = static_cast<Eigen::Index>(psi.dims.total() / da);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
  for (const Matrix& k : ops) {
    const Vector phi = k * psi.amplitudes;
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < da; ++c)
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
            phi.segment(static_cast<Eigen::Index>(c) * rest, rest)
                .dot(phi.segment(static_cast<Eigen::Index>(r) * rest, rest));
  }
  std::vector<std::size_t> adims{da};
  return DensityMatrix(std::move(out), HilbertDims(std::move(adims)));
}

/// Trace distance between Alice's reduced state before and after the
/// channel. The theorem asserts this is zero up to numerical tolerance for
/// any channel confined to the field+Bob sector.
inline double alice_invariance_check(const StateVector& psi, const KrausChannel& ch,
                                     double tol = default_tolerances().invariance) {
  const DensityMatrix before = reduced_density(psi, SectorIndex{0});
  const DensityMatrix after = reduced_after_channel(psi, ch, tol);
  return trace_distance(before, after, 1.0);  // difference need not be exactly Hermitian-checked
}

inline double alice_invariance_check(const BranchState& bs, const KrausChannel& ch,
                                     double tol = default_tolerances().invariance) {
  return alice_invariance_check(assemble(bs, tol), ch, tol);
}

enum class ChannelFamily { Unitary, Measurement, General, Mixed };

struct ScanReport {
  double max_trace_distance = 0.0;
  std::uint64_t worst_seed = 0;
  std::size_t trials = 0;
};

namespace detail {

/// Runs per_trial(i) for i in [0, trials), optionally across threads, and
/// returns all values in trial order so the reduction is deterministic.
template <class F>
std::vector<double> run_trials(std::size_t trials, int jobs, F&& per_trial) {
  std::vector<double> values(trials, 0.0);
  if (jobs <= 1 || trials < 2) {
    for (std::size_t i = 0; i < trials; ++i) values[i] = per_trial(i);
    return values;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), trials);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < trials; i += workers) values[i] = per_trial(i);
    });
  for (auto& t : pool) t.join();
  return values;
}

/// Deterministic channel for one scan trial: the sector cycles over
/// {F}, {B}, {F,B} and the kind follows the family (Mixed cycles kinds).
inline KrausChannel scan_channel(const HilbertDims& dims, ChannelFamily family,
                                 std::uint64_t trial_seed, std::size_t trial) {
  SectorIndex sector;
  switch (trial % 3) {
    case 0: sector = SectorIndex{1}; break;
    case 1: sector = SectorIndex{2}; break;
    default: sector = SectorIndex{1, 2}; break;
  }
  const HilbertDims sdims = sector.select(dims);
  ChannelKind kind;
  switch (family) {
    case ChannelFamily::Unitary: kind = ChannelKind::Unitary; break;
    case ChannelFamily::Measurement: kind = ChannelKind::NonselectiveMeasurement; break;
    case ChannelFamily::General: kind = ChannelKind::General; break;
    default:
      kind = (trial / 3) % 3 == 0   ? ChannelKind::Unitary
             : (trial / 3) % 3 == 1 ? ChannelKind::NonselectiveMeasurement
                                    : ChannelKind::General;
  }
  const std::size_t dim = sdims.total();
  switch (kind) {
    case ChannelKind::Unitary:
      return from_unitary(random_unitary(dim, trial_seed), sector, sdims);
    case ChannelKind::NonselectiveMeasurement:
      return random_measurement(dim, trial_seed, sector, sdims);
    default:
      return random_channel(dim, dim, trial_seed, sector, sdims);
  }
}

}  // namespace detail

/// Sweeps seeded random channels against one global state and reports the
/// worst trace distance together with the seed that produced it.
inline ScanReport signaling_scan(const StateVector& psi, ChannelFamily family,
                                 std::size_t trials, std::uint64_t seed, int jobs = 1) {
  if (trials < 1) throw std::invalid_argument("signaling_scan: trials must be >= 1");
  const auto values = detail::run_trials(trials, jobs, [&](std::size_t i) {
    return alice_invariance_check(psi, detail::scan_channel(psi.dims, family, seed + i, i));
  });
  ScanReport rep;
  rep.trials = trials;
  rep.worst_seed = seed;
  for (std::size_t i = 0; i < trials; ++i)
    if (values[i] > rep.max_trace_distance) {
      rep.max_trace_distance = values[i];
      rep.worst_seed = seed + i;
    }
  return rep;
}

inline ScanReport signaling_scan(const BranchState& bs, ChannelFamily family,
                                 std::size_t trials, std::uint64_t seed, int jobs = 1) {
  return signaling_scan(assemble(bs), family, trials, seed, jobs);
}

/// Joint overlap <Psi_1 (x) B0 | Psi_2 (x) B0> before and after a unitary
/// on the combined field+Bob space. Unitarity forces the two to coincide.
inline std::pair<Complex, Complex> joint_overlap_conservation(
    const StateVector& psi1, const StateVector& psi2, const StateVector& b0, const Matrix& u,
    double tol = default_tolerances().unitarity) {
  const StateVector j1 = tensor(psi1, b0);
  const StateVector j2 = tensor(psi2, b0);
  const Eigen::Index n = j1.amplitudes.size();
  if (u.rows() != n || u.cols() != n)
    throw std::invalid_argument("joint_overlap_conservation: unitary shape mismatch");
  if ((u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e3 * tol)
    throw std::invalid_argument("joint_overlap_conservation: matrix is not unitary");
  const Complex before = overlap(j1, j2);
  const Complex after = (u * j1.amplitudes).dot(u * j2.amplitudes);
  return {before, after};
}

struct FactorizedBoundReport {
  bool branch1_factorizes = false;
  bool branch2_factorizes = false;
  bool bound_holds = true;  // vacuously true when a branch fails to factorize
  double bob_overlap = 0.0;            // |<B_1|B_2>| when both factorize
  double field_overlap_initial = 0.0;  // |<Psi_1|Psi_2>| on the initial surface
  double evolved_field_overlap = 0.0;  // |<Psi'_1|Psi'_2>| when both factorize
};

/// Evolves each branch Psi_i (x) B0 by the unitary, tests whether the
/// result is a product across field|Bob (second Schmidt coefficient below
/// the factorization tolerance) and, when both branches factorize, checks
/// |<B_1|B_2>| >= |<Psi_1|Psi_2>|.
inline FactorizedBoundReport factorized_bound_check(
    const StateVector& psi1, const StateVector& psi2, const StateVector& b0, const Matrix& u,
    const Tolerances& tol = default_tolerances()) {
  FactorizedBoundReport rep;
  rep.field_overlap_initial = std::abs(overlap(psi1, psi2));

  const Eigen::Index df = static_cast<Eigen::Index>(psi1.dims.total());
  const Eigen::Index db = static_cast<Eigen::Index>(b0.dims.total());
  auto evolve_and_split = [&](const StateVector& psi, bool& factorizes, Vector& field,
                              Vector& bob) {
    const StateVector joint = tensor(psi, b0);
    if (u.rows() != joint.amplitudes.size())
      throw std::invalid_argument("factorized_bound_check: unitary shape mismatch");
    const Vector evolved = u * joint.amplitudes;
    Matrix m(df, db);
    for (Eigen::Index f = 0; f < df; ++f) m.row(f) = evolved.segment(f * db, db).transpose();
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    factorizes = sv.size() < 2 || sv(1) < tol.factorization;
    if (factorizes) {
      // m = sigma_0 u v^dag for rank one, so the Bob factor is conj(v).
      field = svd.matrixU().col(0);
      bob = svd.matrixV().col(0).conjugate();
    }
  };

  Vector f1, f2, bb1, bb2;
  evolve_and_split(psi1, rep.branch1_factorizes, f1, bb1);
  evolve_and_split(psi2, rep.branch2_factorizes, f2, bb2);
  if (rep.branch1_factorizes && rep.branch2_factorizes) {
    rep.bob_overlap = std::abs(bb1.dot(bb2));
    rep.evolved_field_overlap = std::abs(f1.dot(f2));
    rep.bound_holds = rep.bob_overlap >= rep.field_overlap_initial - tol.invariance;
  }
  return rep;
}

/// 1 - |<Phi_1|Phi_2>|, clamped to [0, 1].
inline double decoherence_functional(const StateVector& phi1, const StateVector& phi2,
                                     double tol = default_tolerances().invariance) {
  if (!(phi1.dims == phi2.dims))
    throw std::invalid_argument("decoherence_functional: dimension mismatch");
  if (!phi1.is_normalized(tol) || !phi2.is_normalized(tol))
    throw std::invalid_argument("decoherence_functional: states must be normalized");
  return std::clamp(1.0 - std::abs(overlap(phi1, phi2)), 0.0, 1.0);
}

}  // namespace nosig

#endif  // NOSIG_NOSIGNAL_HPP
