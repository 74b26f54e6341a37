// Copyright 2026 The nosig authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef NOSIG_CHANNELS_HPP
#define NOSIG_CHANNELS_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "nosig/core.hpp"

namespace nosig {

enum class ChannelKind { Unitary, NonselectiveMeasurement, General };

/// A general quantum operation in the standard Kraus convention
///   rho -> sum_i K_i rho K_i^dag,  with  sum_i K_i^dag K_i = I.
/// (Texts that write the map with daggered operators and completeness
/// sum K_i K_i^dag = I are describing the adjoints of the operators
/// stored here; the two conventions are related by K_i <-> K_i^dag.)
struct KrausChannel {
  std::vector<Matrix> operators;
  SectorIndex sector;       // factor positions the channel acts on
  HilbertDims sector_dims;  // dims of those factors
  ChannelKind kind = ChannelKind::General;
};

struct ValidationReport {
  bool ok = false;
  double completeness_deviation = 0.0;
  std::string message;
};

/// Checks shapes and the completeness relation sum K^dag K = I.
inline ValidationReport validate(const KrausChannel& ch,
                                 double tol = default_tolerances().invariance) {
  ValidationReport rep;
  if (ch.operators.empty()) {
    rep.message = "empty operator list";
    return rep;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(ch.sector_dims.total());
  for (const Matrix& k : ch.operators)
    if (k.rows() != n || k.cols() != n) {
      rep.message = "operator shape mismatch";
      return rep;
    }
  Matrix sum = Matrix::Zero(n, n);
  for (const Matrix& k : ch.operators) sum += k.adjoint() * k;
  rep.completeness_deviation = (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  rep.ok = rep.completeness_deviation <= tol;
  if (!rep.ok) rep.message = "completeness sum deviates from identity";
  return rep;
}

/// Lifts every Kraus operator to the full space of the given dims.
inline std::vector<Matrix> lifted_operators(const KrausChannel& ch, const HilbertDims& dims) {
  ch.sector.check_against(dims);
  const HilbertDims at_sector = ch.sector.select(dims);
  if (!(at_sector == ch.sector_dims))
    throw std::invalid_argument("channel sector dims do not match the state dims");
  std::vector<Matrix> out;
  out.reserve(ch.operators.size());
  for (const Matrix& k : ch.operators) out.push_back(lift(k, ch.sector, dims));
  return out;
}

/// Applies the channel to a density matrix, lifting to the full space.
inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho,
                           double tol = default_tolerances().invariance) {
  const ValidationReport rep = validate(ch, tol);
  if (!rep.ok) throw std::invalid_argument("apply: invalid channel: " + rep.message);
  const auto ops = lifted_operators(ch, rho.dims);
  Matrix out = Matrix::Zero(rho.entries.rows(), rho.entries.cols());
  for (const Matrix& k : ops) out += k * rho.entries * k.adjoint();
  return DensityMatrix(std::move(out), rho.dims);
}

/// Single-operator channel from a unitary.
inline KrausChannel from_unitary(const Matrix& u, SectorIndex sector, HilbertDims sector_dims,
                                 double tol = default_tolerances().unitarity) {
  const Eigen::Index n = static_cast<Eigen::Index>(sector_dims.total());
  if (u.rows() != n || u.cols() != n)
    throw std::invalid_argument("from_unitary: shape does not match sector dims");
  if ((u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("from_unitary: matrix is not unitary within tolerance");
  return KrausChannel{{u}, std::move(sector), std::move(sector_dims), ChannelKind::Unitary};
}

/// Non-selective measurement: the projectors themselves are the Kraus set.
inline KrausChannel nonselective_measurement(const std::vector<Matrix>& projectors,
                                             SectorIndex sector, HilbertDims sector_dims,
                                             double tol = default_tolerances().invariance) {
  if (projectors.empty())
    throw std::invalid_argument("nonselective_measurement: empty projector set");
  const Eigen::Index n = static_cast<Eigen::Index>(sector_dims.total());
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const Matrix& p = projectors[i];
    if (p.rows() != n || p.cols() != n)
      throw std::invalid_argument("nonselective_measurement: projector shape mismatch");
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("nonselective_measurement: projector not Hermitian");
    if ((p * p - p).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("nonselective_measurement: projector not idempotent");
    for (std::size_t j = i + 1; j < projectors.size(); ++j)
      if ((p * projectors[j]).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("nonselective_measurement: projectors not orthogonal");
    sum += p;
  }
  if ((sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("nonselective_measurement: projectors do not sum to identity");
  return KrausChannel{projectors, std::move(sector), std::move(sector_dims),
                      ChannelKind::NonselectiveMeasurement};
}

namespace detail {

inline Matrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  return g;
}

/// Thin QR of a Ginibre matrix with the R-diagonal phase fix; for
/// rows == cols this is Haar-distributed, and the first `cols` columns of a
/// Haar unitary otherwise.
inline Matrix haar_isometry(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Matrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  Matrix r = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Complex d = r(c, c);
    const double a = std::abs(d);
    q.col(c) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace detail

/// Haar-distributed unitary, deterministic per seed.
inline Matrix random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("random_unitary: dim must be >= 1");
  std::mt19937_64 rng(seed);
  return detail::haar_isometry(static_cast<Eigen::Index>(dim),
                               static_cast<Eigen::Index>(dim), rng);
}

/// Random channel via a Haar isometry into a dim x kraus_count environment
/// (Stinespring dilation). kraus_count = 1 degenerates to a unitary channel.
inline KrausChannel random_channel(std::size_t dim, std::size_t kraus_count, std::uint64_t seed,
                                   SectorIndex sector, HilbertDims sector_dims) {
  if (dim == 0 || kraus_count == 0)
    throw std::invalid_argument("random_channel: dim and kraus_count must be >= 1");
  if (sector_dims.total() != dim)
    throw std::invalid_argument("random_channel: sector dims do not match dim");
  std::mt19937_64 rng(seed);
  const Eigen::Index d = static_cast<Eigen::Index>(dim);
  const Matrix v = detail::haar_isometry(d * static_cast<Eigen::Index>(kraus_count), d, rng);
  std::vector<Matrix> ops;
  ops.reserve(kraus_count);
  for (std::size_t i = 0; i < kraus_count; ++i)
    ops.push_back(v.middleRows(static_cast<Eigen::Index>(i) * d, d));
  return KrausChannel{std::move(ops), std::move(sector), std::move(sector_dims),
                      kraus_count == 1 ? ChannelKind::Unitary : ChannelKind::General};
}

/// Haar-random pure state on the given dims, deterministic per seed.
inline StateVector random_state(const HilbertDims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector v = detail::ginibre(static_cast<Eigen::Index>(dims.total()), 1, rng).col(0);
  return StateVector(v / v.norm(), dims);
}

/// Non-selective measurement in a Haar-random rank-1 basis of the sector.
inline KrausChannel random_measurement(std::size_t dim, std::uint64_t seed, SectorIndex sector,
                                       HilbertDims sector_dims) {
  const Matrix u = random_unitary(dim, seed);
  std::vector<Matrix> projectors;
  projectors.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const Vector col = u.col(static_cast<Eigen::Index>(i));
    projectors.push_back(col * col.adjoint());
  }
  return nonselective_measurement(projectors, std::move(sector), std::move(sector_dims));
}

}  // namespace nosig

#endif  // NOSIG_CHANNELS_HPP
