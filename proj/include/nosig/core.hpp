// Copyright 2026 The nosig authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef NOSIG_CORE_HPP
#define NOSIG_CORE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace nosig {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Central comparison tolerances. Every module reads from one record so a
/// sweep can tighten or relax them in a single place.
struct Tolerances {
  double invariance = 1e-10;     // hermiticity, trace, positivity, invariance
  double unitarity = 1e-12;      // unitarity and completeness checks
  double factorization = 1e-8;   // second Schmidt coefficient cutoff
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

/// Hard cap on the total dimension of any dense state or operator.
inline constexpr std::size_t kMaxTotalDim = 4096;

/// Ordered list of tensor-factor dimensions. Factor 0 is the slowest index
/// in the flattened amplitude vector (row-major flattening).
class HilbertDims {
 public:
  HilbertDims() = default;
  HilbertDims(std::initializer_list<std::size_t> dims)
      : HilbertDims(std::vector<std::size_t>(dims)) {}
  explicit HilbertDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    std::size_t total = 1;
    for (std::size_t d : dims_) {
      if (d < 1) throw std::invalid_argument("HilbertDims: factor dimension must be >= 1");
      if (total > kMaxTotalDim / d)
        throw std::invalid_argument("HilbertDims: total dimension exceeds cap");
      total *= d;
    }
    total_ = total;
  }

  std::size_t total() const { return total_; }
  std::size_t size() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& factors() const { return dims_; }

  friend bool operator==(const HilbertDims& a, const HilbertDims& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

/// A set of factor positions within a HilbertDims; stored sorted and unique.
class SectorIndex {
 public:
  SectorIndex() = default;
  SectorIndex(std::initializer_list<std::size_t> idx)
      : SectorIndex(std::vector<std::size_t>(idx)) {}
  explicit SectorIndex(std::vector<std::size_t> idx) : indices_(std::move(idx)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
      throw std::invalid_argument("SectorIndex: duplicate factor position");
  }

  void check_against(const HilbertDims& dims) const {
    for (std::size_t i : indices_)
      if (i >= dims.size())
        throw std::invalid_argument("SectorIndex: factor position out of range");
  }

  bool contains(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }

  std::size_t size() const { return indices_.size(); }
  const std::vector<std::size_t>& positions() const { return indices_; }

  /// Complement within a dims of the given factor count.
  SectorIndex complement(std::size_t factor_count) const {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < factor_count; ++i)
      if (!contains(i)) rest.push_back(i);
    return SectorIndex(std::move(rest));
  }

  /// Dimensions of the selected factors, in position order.
  HilbertDims select(const HilbertDims& dims) const {
    check_against(dims);
    std::vector<std::size_t> out;
    out.reserve(indices_.size());
    for (std::size_t i : indices_) out.push_back(dims[i]);
    return HilbertDims(std::move(out));
  }

 private:
  std::vector<std::size_t> indices_;
};

namespace detail {

/// Stride of each factor under row-major flattening (factor 0 slowest).
inline std::vector<std::size_t> strides(const HilbertDims& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) s[f - 1] = s[f] * dims[f];
  return s;
}

/// Flat-index offsets contributed by every multi-index over the chosen
/// factors (chosen[0] slowest). Offsets over disjoint factor sets add.
inline std::vector<std::size_t> sector_offsets(const HilbertDims& dims,
                                               const std::vector<std::size_t>& chosen) {
  const auto st = strides(dims);
  std::size_t count = 1;
  for (std::size_t f : chosen) count *= dims[f];
  std::vector<std::size_t> offsets(count, 0);
  std::size_t block = count;
  for (std::size_t f : chosen) {
    block /= dims[f];
    for (std::size_t i = 0; i < count; ++i)
      offsets[i] += ((i / block) % dims[f]) * st[f];
  }
  return offsets;
}

}  // namespace detail

/// Complex amplitude vector over an explicit tensor-factor structure.
struct StateVector {
  Vector amplitudes;
  HilbertDims dims;

  StateVector() = default;
  StateVector(Vector amps, HilbertDims d) : amplitudes(std::move(amps)), dims(std::move(d)) {
    if (static_cast<std::size_t>(amplitudes.size()) != dims.total())
      throw std::invalid_argument("StateVector: amplitude length does not match dims");
  }

  double norm() const { return amplitudes.norm(); }

  bool is_normalized(double tol = default_tolerances().invariance) const {
    return std::abs(norm() - 1.0) <= tol;
  }

  StateVector normalized() const {
    double n = norm();
    if (n == 0.0) throw std::invalid_argument("StateVector: cannot normalize zero state");
    return StateVector(amplitudes / n, dims);
  }
};

/// Computational basis state |index> of the given dims.
inline StateVector basis_state(const HilbertDims& dims, std::size_t index) {
  if (index >= dims.total()) throw std::invalid_argument("basis_state: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v), dims);
}

/// Density operator with the same factor bookkeeping as StateVector.
struct DensityMatrix {
  Matrix entries;
  HilbertDims dims;

  DensityMatrix() = default;
  DensityMatrix(Matrix m, HilbertDims d) : entries(std::move(m)), dims(std::move(d)) {
    if (static_cast<std::size_t>(entries.rows()) != dims.total() ||
        static_cast<std::size_t>(entries.cols()) != dims.total())
      throw std::invalid_argument("DensityMatrix: shape does not match dims");
  }

  static DensityMatrix from_pure(const StateVector& psi) {
    return DensityMatrix(psi.amplitudes * psi.amplitudes.adjoint(), psi.dims);
  }

  Complex trace() const { return entries.trace(); }
  double purity() const { return (entries * entries).trace().real(); }

  double hermiticity_deviation() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (entries + entries.adjoint()));
    return es.eigenvalues().minCoeff();
  }

  /// Throws unless Hermitian, unit-trace and PSD within tolerance.
  void check_valid(double tol = default_tolerances().invariance) const {
    if (hermiticity_deviation() > tol)
      throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    if (std::abs(trace() - Complex(1.0, 0.0)) > tol)
      throw std::invalid_argument("DensityMatrix: trace differs from 1");
    if (min_eigenvalue() < -10 * tol)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
  }
};

/// Kronecker product of two states; result dims are the concatenation.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<std::size_t> d = a.dims.factors();
  d.insert(d.end(), b.dims.factors().begin(), b.dims.factors().end());
  HilbertDims dims(std::move(d));  // throws on dimension overflow
  const Eigen::Index na = a.amplitudes.size(), nb = b.amplitudes.size();
  Vector out(na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    out.segment(i * nb, nb) = a.amplitudes(i) * b.amplitudes;
  return StateVector(std::move(out), std::move(dims));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<std::size_t> d = a.dims.factors();
  d.insert(d.end(), b.dims.factors().begin(), b.dims.factors().end());
  HilbertDims dims(std::move(d));
  const Eigen::Index na = a.entries.rows(), nb = b.entries.rows();
  Matrix out(na * nb, na * nb);
  for (Eigen::Index r = 0; r < na; ++r)
    for (Eigen::Index c = 0; c < na; ++c)
      out.block(r * nb, c * nb, nb, nb) = a.entries(r, c) * b.entries;
  return DensityMatrix(std::move(out), std::move(dims));
}

/// <a|b> with conjugation on the first argument.
inline Complex overlap(const StateVector& a, const StateVector& b) {
  if (!(a.dims == b.dims)) throw std::invalid_argument("overlap: dimension mismatch");
  return a.amplitudes.dot(b.amplitudes);
}

/// Reduced density matrix over the kept factors.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const SectorIndex& keep) {
  keep.check_against(rho.dims);
  const SectorIndex traced = keep.complement(rho.dims.size());
  const auto keep_off = detail::sector_offsets(rho.dims, keep.positions());
  const auto tr_off = detail::sector_offsets(rho.dims, traced.positions());
  const std::size_t dk = keep_off.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (std::size_t t : tr_off)
        acc += rho.entries(static_cast<Eigen::Index>(keep_off[r] + t),
                           static_cast<Eigen::Index>(keep_off[c] + t));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  return DensityMatrix(std::move(out), keep.select(rho.dims));
}

/// Reduced density matrix of a pure state, without forming the full outer
/// product. Agrees with partial_trace(DensityMatrix::from_pure(psi), keep).
inline DensityMatrix reduced_density(const StateVector& psi, const SectorIndex& keep) {
  keep.check_against(psi.dims);
  const SectorIndex traced = keep.complement(psi.dims.size());
  const auto keep_off = detail::sector_offsets(psi.dims, keep.positions());
  const auto tr_off = detail::sector_offsets(psi.dims, traced.positions());
  const std::size_t dk = keep_off.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (std::size_t t : tr_off)
        acc += psi.amplitudes(static_cast<Eigen::Index>(keep_off[r] + t)) *
               std::conj(psi.amplitudes(static_cast<Eigen::Index>(keep_off[c] + t)));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  return DensityMatrix(std::move(out), keep.select(psi.dims));
}

/// Extends an operator on the target factors to the full space, acting as
/// the identity elsewhere.
inline Matrix lift(const Matrix& op, const SectorIndex& target, const HilbertDims& dims) {
  target.check_against(dims);
  const HilbertDims tdims = target.select(dims);
  if (static_cast<std::size_t>(op.rows()) != tdims.total() || op.rows() != op.cols())
    throw std::invalid_argument("lift: operator shape does not match target sector");
  const SectorIndex rest = target.complement(dims.size());
  const auto t_off = detail::sector_offsets(dims, target.positions());
  const auto r_off = detail::sector_offsets(dims, rest.positions());
  const std::size_t total = dims.total(), dt = t_off.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t o : r_off)
    for (std::size_t tr = 0; tr < dt; ++tr)
      for (std::size_t tc = 0; tc < dt; ++tc)
        out(static_cast<Eigen::Index>(o + t_off[tr]), static_cast<Eigen::Index>(o + t_off[tc])) =
            op(static_cast<Eigen::Index>(tr), static_cast<Eigen::Index>(tc));
  return out;
}

/// Half the trace norm of r1 - r2, via the Hermitian eigenvalues of the
/// difference. Always in [0, 1] for valid density matrices.
inline double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2,
                             double tol = default_tolerances().invariance) {
  if (!(r1.dims == r2.dims)) throw std::invalid_argument("trace_distance: dimension mismatch");
  Matrix diff = r1.entries - r2.entries;
  if ((diff - diff.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("trace_distance: difference not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Interference contrast of a path qubit: twice the off-diagonal magnitude.
/// For (|L>|Phi_L> + |R>|Phi_R>)/sqrt(2) with normalized branch fields this
/// equals |<Phi_L|Phi_R>|.
inline double visibility(const DensityMatrix& rho_a) {
  if (rho_a.dims.total() != 2)
    throw std::invalid_argument("visibility: expected a single-qubit density matrix");
  return 2.0 * std::abs(rho_a.entries(0, 1));
}

}  // namespace nosig

#endif  // NOSIG_CORE_HPP
