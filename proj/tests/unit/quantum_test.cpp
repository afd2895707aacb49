// Copyright 2026 The holonomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "holonomy/quantum.hpp"
#include "test_util.hpp"

namespace holo {
namespace {

using test::random_density;
using test::random_hermitian;

TEST(StateVectorTest, RejectsUnnormalizedAmplitudes) {
  Ket v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector{v}, InvalidArgument);
  EXPECT_NO_THROW(StateVector::normalized(v));
  EXPECT_THROW(StateVector::normalized(Ket::Zero(3)), InvalidArgument);
}

TEST(StateVectorTest, BasisAndProjector) {
  const StateVector s = StateVector::basis(3, 2);
  EXPECT_EQ(s.dim(), 3);
  EXPECT_EQ(s[2], Complex(1.0));
  EXPECT_THROW(StateVector::basis(3, 3), InvalidArgument);
  EXPECT_DOUBLE_EQ(s.projector().population(2), 1.0);
}

TEST(DensityMatrixTest, ValidatesInvariants) {
  Operator bad_trace = Operator::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{bad_trace}, InvalidArgument);

  Operator not_hermitian = Operator::Identity(2, 2) / 2.0;
  not_hermitian(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{not_hermitian}, InvalidArgument);

  Operator negative(2, 2);
  negative << 1.2, 0.0, 0.0, -0.2;
  EXPECT_THROW(DensityMatrix{negative}, InvalidArgument);

  const DensityMatrix mixed = DensityMatrix::maximally_mixed(4);
  EXPECT_NEAR(mixed.trace(), 1.0, 1e-15);
  EXPECT_NEAR(mixed.min_eigenvalue(), 0.25, 1e-12);
}

TEST(TensorProductTest, SmallCases) {
  EXPECT_TRUE(tensor_product(Operator(pauli::identity()), Operator(pauli::identity()))
                  .isApprox(Operator::Identity(4, 4)));

  const StateVector k01 = tensor_product(StateVector::basis(2, 0), StateVector::basis(2, 1));
  Ket expected = Ket::Zero(4);
  expected(1) = 1.0;
  EXPECT_TRUE(k01.amplitudes().isApprox(expected));

  // sigma_x (x) sigma_x written out by hand: anti-diagonal ones.
  Operator xx = Operator::Zero(4, 4);
  xx(0, 3) = xx(1, 2) = xx(2, 1) = xx(3, 0) = 1.0;
  EXPECT_TRUE(tensor_product(Operator(pauli::x()), Operator(pauli::x())).isApprox(xx));
  Ket k00 = Ket::Zero(4);
  k00(0) = 1.0;
  const Ket out = xx * k00;
  EXPECT_EQ(out(3), Complex(1.0));
}

TEST(TensorProductTest, AssociativeProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator a = random_hermitian(2, rng);
    const Operator b = random_hermitian(3, rng);
    const Operator c = random_hermitian(2, rng);
    const Operator left = tensor_product(tensor_product(a, b), c);
    const Operator right = tensor_product(a, tensor_product(b, c));
    EXPECT_LT(max_abs(left - right), 1e-14);
  }
}

TEST(HermitianPropagatorTest, ClosedForms) {
  EXPECT_TRUE(hermitian_propagator(Operator::Zero(3, 3), 0.7).isApprox(Operator::Identity(3, 3)));

  const double omega = 2.0;
  const double dt = kPi / omega;
  const Operator u = hermitian_propagator(Operator(0.5 * omega * pauli::x()), dt);
  const Operator expected = Complex(0.0, -1.0) * Operator(pauli::x());
  EXPECT_LT(max_abs(u - expected), 1e-12);

  const double w = 1.3;
  const double t = 0.4;
  const Operator uz = hermitian_propagator(Operator(0.5 * w * pauli::z()), t);
  EXPECT_LT(std::abs(uz(0, 0) - std::polar(1.0, -w * t / 2.0)), 1e-14);
  EXPECT_LT(std::abs(uz(1, 1) - std::polar(1.0, w * t / 2.0)), 1e-14);
}

TEST(HermitianPropagatorTest, RejectsNonHermitian) {
  Operator h = Operator::Zero(2, 2);
  h(0, 1) = 1.0;
  EXPECT_THROW(hermitian_propagator(h, 1.0), InvalidHamiltonian);
}

TEST(HermitianPropagatorTest, UnitaryForRandomGenerators) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const int dim = 2 + trial % 4;
    Operator h = random_hermitian(dim, rng);
    const double norm = h.operatorNorm();
    const Operator u = hermitian_propagator(h, kPi / norm);
    ASSERT_TRUE(is_unitary(u)) << "trial " << trial;
  }
}

TEST(FidelityTest, UnattenuatedExamples) {
  const DensityMatrix zero = StateVector::basis(2, 0).projector();
  const DensityMatrix one = StateVector::basis(2, 1).projector();
  EXPECT_NEAR(unattenuated_fidelity(zero, zero), 1.0, 1e-15);
  EXPECT_NEAR(unattenuated_fidelity(zero, one), 0.0, 1e-15);
  EXPECT_NEAR(unattenuated_fidelity(zero, DensityMatrix::maximally_mixed(2)), 1.0 / std::sqrt(2.0),
              1e-12);
  EXPECT_THROW(unattenuated_fidelity(zero, DensityMatrix::maximally_mixed(3)), DimensionMismatch);
}

TEST(FidelityTest, UnattenuatedSymmetricAndBounded) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + trial % 3;
    const DensityMatrix a = random_density(dim, rng);
    const DensityMatrix b = random_density(dim, rng);
    const double f = unattenuated_fidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_NEAR(f, unattenuated_fidelity(b, a), 1e-13);
  }
}

TEST(FidelityTest, AverageGateFidelity) {
  const Operator u = hermitian_propagator(Operator(pauli::y()), 0.3);
  EXPECT_NEAR(average_gate_fidelity(u, u), 1.0, 1e-14);
  EXPECT_NEAR(average_gate_fidelity(u, std::polar(1.0, kPi / 7.0) * u), 1.0, 1e-14);
  EXPECT_NEAR(average_gate_fidelity(Operator(pauli::identity()), Operator(pauli::x())), 1.0 / 3.0,
              1e-14);
}

TEST(FidelityTest, AverageGateFidelityMatchesStateAverage) {
  // The six Pauli eigenstates form a 2-design, so their mean state fidelity
  // equals the Haar average exactly.
  std::mt19937_64 rng(8);
  const Complex i(0.0, 1.0);
  std::vector<Ket> design;
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& [a, b] : std::vector<std::pair<Complex, Complex>>{
           {1.0, 0.0}, {0.0, 1.0}, {r, r}, {r, -r}, {r, i * r}, {r, -i * r}}) {
    Ket k(2);
    k << a, b;
    design.push_back(k);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const Operator u = hermitian_propagator(random_hermitian(2, rng), 1.0);
    const Operator v = hermitian_propagator(random_hermitian(2, rng), 0.2) * u;
    double mean = 0.0;
    for (const Ket& k : design) mean += std::norm((u * k).dot(v * k));
    EXPECT_NEAR(average_gate_fidelity(u, v), mean / 6.0, 1e-13);
  }
}

TEST(FidelityTest, PhaseInvariantDistance) {
  const Operator u = hermitian_propagator(Operator(pauli::x() + pauli::z()), 0.9);
  EXPECT_LT(phase_invariant_distance(u, std::polar(1.0, 2.1) * u), 1e-14);
  EXPECT_GT(phase_invariant_distance(u, Operator(pauli::identity())), 0.1);
}

TEST(BlochTest, Examples) {
  const BlochPoint p0 = bloch_coordinates(StateVector::basis(2, 0).projector());
  EXPECT_NEAR(p0.z, 1.0, 1e-15);
  EXPECT_NEAR(p0.population, 1.0, 1e-15);

  const double r = 1.0 / std::sqrt(2.0);
  Ket plus(2);
  plus << r, r;
  const BlochPoint px = bloch_coordinates(StateVector(plus).projector());
  EXPECT_NEAR(px.x, 1.0, 1e-15);
  EXPECT_NEAR(px.y, 0.0, 1e-15);

  Ket minus_i(2);
  minus_i << r, Complex(0.0, -r);
  const BlochPoint py = bloch_coordinates(StateVector(minus_i).projector());
  EXPECT_NEAR(py.x, 0.0, 1e-15);
  EXPECT_NEAR(py.y, -1.0, 1e-15);
  EXPECT_NEAR(py.z, 0.0, 1e-15);
}

TEST(BlochTest, QutritBlockAndEmptySubspace) {
  Ket v(3);
  v << 0.6, 0.0, 0.8;
  const BlochPoint p = bloch_coordinates(StateVector(v).projector());
  EXPECT_NEAR(p.population, 0.36, 1e-15);
  EXPECT_NEAR(p.z, 1.0, 1e-14);
  EXPECT_THROW(bloch_coordinates(StateVector::basis(3, 2).projector()), InvalidArgument);
}

TEST(PartialTraceTest, Examples) {
  std::mt19937_64 rng(3);
  const DensityMatrix a = random_density(2, rng);
  const DensityMatrix b = random_density(3, rng);
  const DensityMatrix ab(tensor_product(a.entries(), b.entries()));
  EXPECT_LT(max_abs(partial_trace(ab, 0, {2, 3}).entries() - a.entries()), 1e-14);
  EXPECT_LT(max_abs(partial_trace(ab, 1, {2, 3}).entries() - b.entries()), 1e-14);

  const double r = 1.0 / std::sqrt(2.0);
  Ket bell = Ket::Zero(4);
  bell(0) = r;
  bell(3) = r;
  const DensityMatrix rho = StateVector(bell).projector();
  for (int keep : {0, 1}) {
    EXPECT_LT(max_abs(partial_trace(rho, keep, {2, 2}).entries() - Operator::Identity(2, 2) / 2.0),
              1e-15);
  }

  const DensityMatrix k01 = StateVector::basis(4, 1).projector();
  EXPECT_NEAR(partial_trace(k01, 1, {2, 2}).population(1), 1.0, 1e-15);
  EXPECT_THROW(partial_trace(k01, 2, {2, 2}), InvalidArgument);
  EXPECT_THROW(partial_trace(k01, 0, {2, 3}), DimensionMismatch);
}

TEST(PartialTraceTest, PreservesTraceAndPositivity) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density(6, rng);
    for (int keep : {0, 1}) {
      const DensityMatrix reduced = partial_trace(rho, keep, {2, 3});
      EXPECT_NEAR(reduced.trace(), 1.0, 1e-9);
      EXPECT_GE(reduced.min_eigenvalue(), -1e-9);
    }
  }
}

}  // namespace
}  // namespace holo
