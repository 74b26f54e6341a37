// Copyright 2026 The nosig authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <random>

#include "nosig/channels.hpp"
#include "nosig/core.hpp"

using namespace nosig;

namespace {

StateVector plus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return StateVector(v, HilbertDims({2}));
}

}  // namespace

TEST_CASE("HilbertDims validates factors and caps the total") {
  CHECK(HilbertDims({2, 3, 4}).total() == 24);
  CHECK_THROWS_AS(HilbertDims({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(HilbertDims({64, 64, 64}), std::invalid_argument);
}

TEST_CASE("tensor of basis states is basis bookkeeping") {
  const HilbertDims q({2});
  const StateVector v = tensor(basis_state(q, 0), basis_state(q, 1));
  CHECK(v.dims.total() == 4);
  CHECK(v.amplitudes(1) == Complex(1.0));
  CHECK(v.amplitudes(0) == Complex(0.0));
}

TEST_CASE("tensor of uniform superpositions is uniform") {
  const StateVector v = tensor(plus_state(), plus_state());
  for (int i = 0; i < 4; ++i) CHECK(std::abs(v.amplitudes(i) - Complex(0.5)) < 1e-15);
}

TEST_CASE("tensor of random normalized states keeps norm 1") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const StateVector a = random_state(HilbertDims({3}), seed);
    const StateVector b = random_state(HilbertDims({4}), seed + 100);
    CHECK(std::abs(tensor(a, b).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("flattening is row-major with factor 0 slowest") {
  // |i j k> of dims [2,3,2] lands at flat index (i*3 + j)*2 + k
  const HilbertDims dims({2, 3, 2});
  const StateVector v = tensor(tensor(basis_state(HilbertDims({2}), 1),
                                      basis_state(HilbertDims({3}), 2)),
                               basis_state(HilbertDims({2}), 0));
  CHECK(v.amplitudes((1 * 3 + 2) * 2 + 0) == Complex(1.0));
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  Vector bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  const DensityMatrix rho = DensityMatrix::from_pure(StateVector(bell, HilbertDims({2, 2})));
  const DensityMatrix red = partial_trace(rho, SectorIndex{0});
  CHECK(std::abs(red.entries(0, 0) - Complex(0.5)) < 1e-14);
  CHECK(std::abs(red.entries(1, 1) - Complex(0.5)) < 1e-14);
  CHECK(std::abs(red.entries(0, 1)) < 1e-14);
}

TEST_CASE("partial trace of a product state recovers the factor") {
  const StateVector psi = tensor(basis_state(HilbertDims({2}), 0), plus_state());
  const DensityMatrix red = partial_trace(DensityMatrix::from_pure(psi), SectorIndex{0});
  CHECK(std::abs(red.entries(0, 0) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(red.entries(1, 1)) < 1e-14);
}

TEST_CASE("reduced matrices of a bipartite pure state share their spectrum") {
  // Schmidt property, arbitrated by a singular-value oracle on the reshaped
  // amplitude matrix.
  const HilbertDims dims({2, 3});
  const StateVector psi = random_state(dims, 42);
  const DensityMatrix rho = DensityMatrix::from_pure(psi);
  const DensityMatrix ra = partial_trace(rho, SectorIndex{0});
  const DensityMatrix rb = partial_trace(rho, SectorIndex{1});

  Matrix m(2, 3);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = psi.amplitudes(r * 3 + c);
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto sv = svd.singularValues();

  Eigen::SelfAdjointEigenSolver<Matrix> ea(ra.entries), eb(rb.entries);
  for (int k = 0; k < 2; ++k) {
    const double expected = sv(k) * sv(k);
    CHECK(std::abs(ea.eigenvalues()(1 - k) - expected) < 1e-10);
    CHECK(std::abs(eb.eigenvalues()(2 - k) - expected) < 1e-10);
  }
}

TEST_CASE("partial trace preserves trace, Hermiticity, positivity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const HilbertDims dims({2, 4, 4});
    // random mixed state: convex mixture of random pure states
    Matrix acc = Matrix::Zero(32, 32);
    for (int k = 0; k < 3; ++k) {
      const StateVector psi = random_state(dims, rng());
      acc += (1.0 / 3.0) * (psi.amplitudes * psi.amplitudes.adjoint());
    }
    const DensityMatrix rho(acc, dims);
    for (auto keep : {SectorIndex{0}, SectorIndex{1}, SectorIndex{0, 2}}) {
      const DensityMatrix red = partial_trace(rho, keep);
      CHECK(std::abs(red.trace() - Complex(1.0)) < 1e-10);
      CHECK(red.hermiticity_deviation() < 1e-10);
      CHECK(red.min_eigenvalue() > -1e-10);
    }
  }
}

TEST_CASE("reduced_density agrees with partial_trace of the outer product") {
  const HilbertDims dims({2, 3, 2});
  const StateVector psi = random_state(dims, 5);
  for (auto keep : {SectorIndex{0}, SectorIndex{2}, SectorIndex{0, 1}}) {
    const DensityMatrix a = reduced_density(psi, keep);
    const DensityMatrix b = partial_trace(DensityMatrix::from_pure(psi), keep);
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("lift of the identity is the identity") {
  const HilbertDims dims({2, 3, 2});
  const Matrix lifted = lift(Matrix::Identity(6, 6), SectorIndex{1, 2}, dims);
  CHECK((lifted - Matrix::Identity(12, 12)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lift of X on factor 1 flips the second qubit") {
  const HilbertDims dims({2, 2});
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const Matrix lifted = lift(x, SectorIndex{1}, dims);
  const StateVector v00 = basis_state(dims, 0);
  const Vector out = lifted * v00.amplitudes;
  CHECK(std::abs(out(1) - Complex(1.0)) < 1e-15);  // |00> -> |01>
}

TEST_CASE("lift rejects shape mismatches") {
  CHECK_THROWS_AS(lift(Matrix::Identity(3, 3), SectorIndex{1}, HilbertDims({2, 2})),
                  std::invalid_argument);
}

TEST_CASE("partial-trace cyclicity for operators acting away from Alice") {
  // Tr_FB[K rho K^dag] = Tr_FB[rho K^dag K] entrywise, the step behind the
  // invariance proof. Checked for a random non-unitary M on the FB sector.
  const HilbertDims dims({2, 3, 2});
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  Matrix m(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
  const Matrix k = lift(m, SectorIndex{1, 2}, dims);
  const StateVector psi = random_state(dims, 3);
  const Matrix rho = psi.amplitudes * psi.amplitudes.adjoint();

  const DensityMatrix lhs(Matrix(k * rho * k.adjoint()), dims);
  const DensityMatrix rhs(Matrix(rho * k.adjoint() * k), dims);
  const Matrix tl = partial_trace(lhs, SectorIndex{0}).entries;
  const Matrix tr = partial_trace(rhs, SectorIndex{0}).entries;
  CHECK((tl - tr).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("overlap basics") {
  const StateVector psi = random_state(HilbertDims({5}), 9);
  CHECK(std::abs(overlap(psi, psi) - Complex(1.0)) < 1e-12);
  const HilbertDims q({2});
  CHECK(std::abs(overlap(basis_state(q, 0), basis_state(q, 1))) == 0.0);
  CHECK_THROWS_AS(overlap(basis_state(q, 0), basis_state(HilbertDims({3}), 0)),
                  std::invalid_argument);
}

TEST_CASE("overlap magnitude is invariant under a common unitary") {
  const HilbertDims dims({4});
  const StateVector a = random_state(dims, 21);
  const StateVector b = random_state(dims, 22);
  const Matrix u = random_unitary(4, 23);
  const Complex before = overlap(a, b);
  const Complex after = (u * a.amplitudes).dot(u * b.amplitudes);
  CHECK(std::abs(std::abs(before) - std::abs(after)) < 1e-12);
}

TEST_CASE("trace distance basics") {
  const HilbertDims q({2});
  const DensityMatrix r0 = DensityMatrix::from_pure(basis_state(q, 0));
  const DensityMatrix r1 = DensityMatrix::from_pure(basis_state(q, 1));
  CHECK(trace_distance(r0, r0) == 0.0);
  CHECK(std::abs(trace_distance(r0, r1) - 1.0) < 1e-14);
}

TEST_CASE("trace distance is invariant under common unitary conjugation") {
  const HilbertDims dims({3});
  const DensityMatrix r1 = DensityMatrix::from_pure(random_state(dims, 31));
  const DensityMatrix r2 = DensityMatrix::from_pure(random_state(dims, 32));
  const Matrix u = random_unitary(3, 33);
  const DensityMatrix s1(Matrix(u * r1.entries * u.adjoint()), dims);
  const DensityMatrix s2(Matrix(u * r2.entries * u.adjoint()), dims);
  CHECK(std::abs(trace_distance(r1, r2) - trace_distance(s1, s2)) < 1e-12);
}

TEST_CASE("visibility equals the branch-field overlap") {
  const HilbertDims f({4});
  SUBCASE("identical branch fields give visibility 1") {
    const StateVector phi = random_state(f, 41);
    const StateVector psi = StateVector(
        (tensor(basis_state(HilbertDims({2}), 0), phi).amplitudes +
         tensor(basis_state(HilbertDims({2}), 1), phi).amplitudes) /
            std::sqrt(2.0),
        HilbertDims({2, 4}));
    CHECK(std::abs(visibility(reduced_density(psi, SectorIndex{0})) - 1.0) < 1e-12);
  }
  SUBCASE("orthogonal branch fields give visibility 0") {
    const StateVector psi = StateVector(
        (tensor(basis_state(HilbertDims({2}), 0), basis_state(f, 0)).amplitudes +
         tensor(basis_state(HilbertDims({2}), 1), basis_state(f, 1)).amplitudes) /
            std::sqrt(2.0),
        HilbertDims({2, 4}));
    CHECK(visibility(reduced_density(psi, SectorIndex{0})) < 1e-14);
  }
  SUBCASE("overlap 0.9 gives visibility 0.9") {
    Vector a = Vector::Zero(4), b = Vector::Zero(4);
    a(0) = 1.0;
    b(0) = 0.9;
    b(1) = std::sqrt(1.0 - 0.81);
    const StateVector pa(a, f), pb(b, f);
    const StateVector psi = StateVector(
        (tensor(basis_state(HilbertDims({2}), 0), pa).amplitudes +
         tensor(basis_state(HilbertDims({2}), 1), pb).amplitudes) /
            std::sqrt(2.0),
        HilbertDims({2, 4}));
    CHECK(std::abs(visibility(reduced_density(psi, SectorIndex{0})) - 0.9) < 1e-12);
  }
}

TEST_CASE("visibility property holds for random branch-form states") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const HilbertDims f({5});
    const StateVector pa = random_state(f, seed);
    const StateVector pb = random_state(f, seed + 1000);
    const StateVector psi = StateVector(
        (tensor(basis_state(HilbertDims({2}), 0), pa).amplitudes +
         tensor(basis_state(HilbertDims({2}), 1), pb).amplitudes) /
            std::sqrt(2.0),
        HilbertDims({2, 5}));
    const double expected = std::abs(overlap(pa, pb));
    CHECK(std::abs(visibility(reduced_density(psi, SectorIndex{0})) - expected) < 1e-12);
  }
}
