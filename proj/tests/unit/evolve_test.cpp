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

#include "holonomy/evolve.hpp"
#include "holonomy/gates.hpp"
#include "test_util.hpp"

namespace holo {
namespace {

constexpr double kOmegaPaper = kTwoPi * 8.660e6;

const GateSpec& sqrt_x() {
  static const GateSpec spec(kPi / 2.0, 0.0, kPi / 2.0);
  return spec;
}

GateSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return GateSpec(kPi * u(rng), kTwoPi * u(rng), 0.05 + (kTwoPi - 0.1) * u(rng));
}

double block_infidelity(const Operator& u, const GateSpec& spec) {
  return 1.0 - average_gate_fidelity(ideal_single_qubit(spec), u.topLeftCorner(2, 2));
}

TEST(HamiltonianTest, IdleIsZero) {
  const PulseSchedule idle = PulseSchedule::idle(1.0);
  EXPECT_EQ(max_abs(assemble_hamiltonian(idle, 0.5)), 0.0);
}

TEST(HamiltonianTest, SqrtXCouplings) {
  const PulseSchedule s = synthesize_tounhqc(sqrt_x(), kOmegaPaper);
  const double expected = kTwoPi * 6.124e6 / 2.0;
  for (double f : {0.0, 0.37, 1.0}) {
    const Operator h = assemble_hamiltonian(s, f * s.duration());
    EXPECT_TRUE(is_hermitian(h, 1e-6));
    EXPECT_NEAR(std::abs(h(0, 2)), expected, 1e-3 * expected);
    EXPECT_NEAR(std::abs(h(1, 2)), expected, 1e-3 * expected);
    EXPECT_EQ(h(0, 1), Complex(0.0));
  }
  EXPECT_THROW(assemble_hamiltonian(s, 1.1 * s.duration()), InvalidArgument);
}

TEST(HamiltonianTest, ErrorInjectionScaling) {
  const PulseSchedule s = synthesize_nhqc(GateSpec(1.1, 0.4, 2.0), 3.0);
  ErrorInjection err;
  err.amp_fraction = 0.05;
  const double t = 0.3 * s.duration();
  const Operator h0 = assemble_hamiltonian(s, t);
  const Operator h1 = assemble_hamiltonian(s, t, err);
  for (auto [i, j] : {std::pair{0, 2}, {1, 2}, {2, 0}, {2, 1}}) {
    EXPECT_NEAR(std::abs(h1(i, j) - 1.05 * h0(i, j)), 0.0, 1e-15);
  }
  ErrorInjection det;
  det.detuning_fraction = 0.05;
  det.detuning_abs = 0.25;
  EXPECT_NEAR(assemble_hamiltonian(s, t, det)(2, 2).real(), 0.05 * 3.0 + 0.25, 1e-15);
}

TEST(ErrorInjectionTest, Validation) {
  ErrorInjection err;
  err.amp_fraction = -1.0;
  EXPECT_THROW(err.validate(), InvalidArgument);
  err.amp_fraction = std::nan("");
  EXPECT_THROW(err.validate(), InvalidArgument);
  err.amp_fraction = 0.2;
  err.detuning_fraction = -0.2;
  EXPECT_NO_THROW(err.validate());
}

TEST(TimeGridTest, AlignsToBreakpoints) {
  IntegratorConfig ic;
  ic.steps = 1000;
  const auto grid = build_time_grid(1.0, {0.3337}, ic);
  bool hit = false;
  double total = 0.0;
  for (const auto& s : grid) {
    hit |= std::abs(s.t0 - 0.3337) < 1e-15;
    total += s.dt;
    EXPECT_LE(s.dt, 1e-3 * (1.0 + 1e-12));
  }
  EXPECT_TRUE(hit);
  EXPECT_NEAR(total, 1.0, 1e-13);
}

TEST(TimeGridTest, StepSizeErrors) {
  IntegratorConfig coarse;
  coarse.dt = 0.02;
  EXPECT_THROW(build_time_grid(1.0, {}, coarse), StepSizeError);
  IntegratorConfig few;
  few.steps = 50;
  EXPECT_THROW(build_time_grid(1.0, {}, few), StepSizeError);
  IntegratorConfig stride;
  stride.record_stride = 0;
  EXPECT_THROW(build_time_grid(1.0, {}, stride), InvalidArgument);
}

TEST(PropagatorTest, IdleIsIdentity) {
  EXPECT_LT(max_abs(propagator(PulseSchedule::idle(1e-7)) - Operator::Identity(3, 3)), 1e-15);
}

TEST(PropagatorTest, SqrtXBlockMatchesIdeal) {
  for (Scheme scheme : {Scheme::Tounhqc, Scheme::Nhqc}) {
    const Operator u = propagator(synthesize(scheme, sqrt_x(), kOmegaPaper));
    EXPECT_LT(block_infidelity(u, sqrt_x()), 1e-9) << to_string(scheme);
    EXPECT_LT(phase_invariant_distance(u.topLeftCorner(2, 2), ideal_single_qubit(sqrt_x())), 1e-6);
  }
}

TEST(PropagatorTest, RealizesDriveBrightPhase) {
  // Both loops map |b> -> e^{-i gamma}|b>, |d> -> |d> for the drive bright state.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const GateSpec spec = random_spec(rng);
    const DriveAxis axis = drive_axis(spec);
    const BrightDark bd = bright_dark_basis(axis.theta_mix, axis.phi0_offset);
    for (Scheme scheme : {Scheme::Tounhqc, Scheme::Nhqc}) {
      const Operator u = propagator(synthesize(scheme, spec, 2.0));
      const Ket b = u * bd.bright.amplitudes();
      const Ket d = u * bd.dark.amplitudes();
      EXPECT_LT((b - std::polar(1.0, -spec.gamma()) * bd.bright.amplitudes()).norm(), 1e-6);
      EXPECT_LT((d - bd.dark.amplitudes()).norm(), 1e-9);
    }
  }
}

TEST(PropagatorTest, UnitaryForRandomSchedules) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> e(-0.2, 0.2);
  for (int trial = 0; trial < 100; ++trial) {
    const Scheme scheme = trial % 2 ? Scheme::Nhqc : Scheme::Tounhqc;
    ErrorInjection err;
    err.amp_fraction = e(rng);
    err.detuning_fraction = e(rng);
    IntegratorConfig ic;
    ic.steps = 200;
    const Operator u = propagator(synthesize(scheme, random_spec(rng), 1.0), err, ic);
    ASSERT_LT(max_abs(u.adjoint() * u - Operator::Identity(3, 3)), 1e-9);
  }
}

TEST(PropagatorTest, StepHalvingConverges) {
  for (Scheme scheme : {Scheme::Tounhqc, Scheme::Nhqc}) {
    const PulseSchedule s = synthesize(scheme, GateSpec(0.7, 1.9, 2.3), kOmegaPaper);
    IntegratorConfig coarse;
    IntegratorConfig fine;
    fine.steps = 2 * coarse.steps;
    EXPECT_LT(max_abs(propagator(s, {}, coarse) - propagator(s, {}, fine)), 1e-6);
  }
}

TEST(PropagatorTest, Rk4IsFourthOrder) {
  const PulseSchedule s = synthesize_tounhqc(GateSpec(1.0, 0.3, 1.2), 1.0);
  IntegratorConfig ref;
  ref.method = Method::Rk4;
  ref.steps = 20000;
  const Operator exact = propagator(s, {}, ref);
  auto rk4_error = [&](int steps) {
    IntegratorConfig ic;
    ic.method = Method::Rk4;
    ic.steps = steps;
    return max_abs(propagator(s, {}, ic) - exact);
  };
  const double ratio = rk4_error(200) / rk4_error(400);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(EvolvePureTest, SqrtXFromGround) {
  const PulseSchedule s = synthesize_tounhqc(sqrt_x(), kOmegaPaper);
  const auto frames = evolve_pure(StateVector::basis(3, 0), s);
  ASSERT_EQ(frames.size(), 2000u / 20u + 1u);
  EXPECT_EQ(frames.front().t, 0.0);
  EXPECT_NEAR(frames.back().t, s.duration(), 1e-20);
  const StateVector& end = frames.back().state;
  EXPECT_NEAR(std::norm(end[0]), 0.5, 1e-4);
  EXPECT_NEAR(std::norm(end[1]), 0.5, 1e-4);
  EXPECT_LT(std::norm(end[2]), 1e-4);
}

TEST(EvolvePureTest, DarkStateDecoupledUnderDetuningAndAmplitudeError) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> e(-0.2, 0.2);
  for (int trial = 0; trial < 20; ++trial) {
    const GateSpec spec = random_spec(rng);
    const DriveAxis axis = drive_axis(spec);
    const BrightDark bd = bright_dark_basis(axis.theta_mix, axis.phi0_offset);
    ErrorInjection err;
    err.amp_fraction = e(rng);
    err.detuning_fraction = e(rng);
    IntegratorConfig ic;
    ic.steps = 400;
    ic.record_stride = 10;
    for (Scheme scheme : {Scheme::Tounhqc, Scheme::Nhqc}) {
      for (const auto& f : evolve_pure(bd.dark, synthesize(scheme, spec, 1.0), err, ic)) {
        ASSERT_NEAR(std::norm(bd.dark.amplitudes().dot(f.state.amplitudes())), 1.0, 1e-9);
      }
    }
  }
}

TEST(EvolvePureTest, ExcitedStateStaysInDrivenSubspace) {
  const GateSpec spec(1.2, 0.8, 2.0);
  const DriveAxis axis = drive_axis(spec);
  const BrightDark bd = bright_dark_basis(axis.theta_mix, axis.phi0_offset);
  for (const auto& f : evolve_pure(StateVector::basis(3, 2), synthesize_tounhqc(spec, 1.0))) {
    EXPECT_NEAR(f.state.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_LT(std::abs(bd.dark.amplitudes().dot(f.state.amplitudes())), 1e-12);
  }
}

TEST(EvolveDensityTest, NoiselessMatchesPure) {
  const PulseSchedule s = synthesize_nhqc(sqrt_x(), kOmegaPaper);
  const StateVector psi0 = StateVector::basis(3, 0);
  const auto pure = evolve_pure(psi0, s);
  const auto mixed = evolve_density(psi0.projector(), s, NoiseModel{});
  ASSERT_EQ(pure.size(), mixed.size());
  for (std::size_t k = 0; k < pure.size(); ++k) {
    const Operator rho = pure[k].state.projector().entries();
    ASSERT_LT(max_abs(rho - mixed[k].state.entries()), 1e-7);
  }
}

TEST(EvolveDensityTest, ExcitedDecayMatchesExponential) {
  const double gamma = 1.0 / 20e-6;
  NoiseModel noise;
  Operator l = Operator::Zero(3, 3);
  l(level::kZero, level::kExcited) = 1.0;
  noise.collapse_ops.push_back({l, gamma});
  const PulseSchedule idle = PulseSchedule::idle(30e-6);
  const auto frames = evolve_density(StateVector::basis(3, 2).projector(), idle, noise);
  for (const auto& f : frames) {
    EXPECT_NEAR(f.state.population(2), std::exp(-gamma * f.t), 1e-4);
    EXPECT_NEAR(f.state.population(0), 1.0 - std::exp(-gamma * f.t), 1e-4);
  }
}

TEST(EvolveDensityTest, DephasingMatchesClosedForm) {
  // L = sqrt(2 / Tphi) |1><1| gives d rho01 / dt = -rho01 / Tphi.
  const double tphi = 5e-6;
  TransmonRates rates{0.0, 0.0, 0.0, tphi};
  const NoiseModel noise = transmon_noise(rates);
  ASSERT_EQ(noise.collapse_ops.size(), 1u);
  Ket plus = Ket::Zero(3);
  plus(0) = plus(1) = 1.0 / std::sqrt(2.0);
  const auto frames =
      evolve_density(StateVector(plus).projector(), PulseSchedule::idle(10e-6), noise);
  for (const auto& f : frames) {
    EXPECT_NEAR(std::abs(f.state(0, 1)), 0.5 * std::exp(-f.t / tphi), 1e-9);
    EXPECT_NEAR(f.state.population(1), 0.5, 1e-12);
  }
}

TEST(EvolveDensityTest, TraceAndPositivityUnderStrongNoise) {
  std::mt19937_64 rng(42);
  const TransmonRates rates{2e-6, 1e-6, 3e-6, 4e-6};
  const NoiseModel noise = transmon_noise(rates);
  for (int trial = 0; trial < 10; ++trial) {
    const PulseSchedule s = synthesize(trial % 2 ? Scheme::Nhqc : Scheme::Tounhqc,
                                       random_spec(rng), kOmegaPaper);
    const auto frames = evolve_density(test::random_density(3, rng), s, noise);
    for (const auto& f : frames) {
      ASSERT_NEAR(f.state.trace(), 1.0, 1e-8);
      ASSERT_GE(f.state.min_eigenvalue(), -1e-7);
    }
  }
}

TEST(EvolveDensityTest, RejectsCoarseStepForNoise) {
  NoiseModel noise;
  noise.collapse_ops.push_back({Operator::Identity(3, 3), 1e9});
  EXPECT_THROW(evolve_density(StateVector::basis(3, 0).projector(), PulseSchedule::idle(1e-6),
                              noise),
               StepSizeError);
}

TEST(NoiseModelTest, Validation) {
  NoiseModel noise;
  EXPECT_TRUE(noise.empty());
  noise.collapse_ops.push_back({Operator::Identity(2, 2), 1.0});
  EXPECT_THROW(noise.validate(3), DimensionMismatch);
  noise.collapse_ops[0].rate = -1.0;
  EXPECT_THROW(noise.validate(2), InvalidArgument);
}

TEST(NoiseModelTest, TransmonLadder) {
  const NoiseModel noise = transmon_noise(TransmonRates{});
  ASSERT_EQ(noise.collapse_ops.size(), 2u);
  EXPECT_NEAR(noise.collapse_ops[0].rate, 1.0 / 20e-6, 1e-6);
  EXPECT_EQ(noise.collapse_ops[0].op(level::kZero, level::kExcited), Complex(1.0));
  EXPECT_NEAR(noise.collapse_ops[1].rate, 1.0 / 10e-6, 1e-6);
  EXPECT_EQ(noise.collapse_ops[1].op(level::kExcited, level::kOne), Complex(1.0));
  EXPECT_NEAR(noise.max_rate(), 1e5, 1e-6);
}

TEST(LiouvillianTest, CoherentPartIsCommutator) {
  std::mt19937_64 rng(6);
  const Operator h = test::random_hermitian(3, rng);
  const Operator rho = test::random_density(3, rng).entries();
  const Operator l = liouvillian(h, NoiseModel{});
  const Ket vec_rho = Eigen::Map<const Ket>(rho.data(), rho.size());
  const Ket out = l * vec_rho;
  const Operator expected = Complex(0.0, -1.0) * (h * rho - rho * h);
  const Operator got = Eigen::Map<const Operator>(out.data(), 3, 3);
  EXPECT_LT(max_abs(got - expected), 1e-13);
}

TEST(LiouvillianTest, DissipatorMatchesDirectFormula) {
  std::mt19937_64 rng(7);
  const Operator rho = test::random_density(3, rng).entries();
  const Operator a = test::random_hermitian(3, rng) + Complex(0.0, 1.0) * test::random_hermitian(3, rng);
  NoiseModel noise;
  noise.collapse_ops.push_back({a, 0.7});
  const Operator l = liouvillian(Operator::Zero(3, 3), noise);
  const Ket out = l * Eigen::Map<const Ket>(rho.data(), rho.size());
  const Operator ada = a.adjoint() * a;
  const Operator expected = 0.7 * (a * rho * a.adjoint() - 0.5 * (ada * rho + rho * ada));
  EXPECT_LT(max_abs(Eigen::Map<const Operator>(out.data(), 3, 3) - expected), 1e-13);
}

TEST(ChannelTest, NoiselessChannelIsUnitaryChannel) {
  const PulseSchedule s = synthesize_tounhqc(sqrt_x(), kOmegaPaper);
  const Operator u = propagator(s);
  const Channel c = evolve_channel(lambda_system(s), NoiseModel{});
  EXPECT_LT(max_abs(c.superop - Channel::unitary(u).superop), 1e-15);
  EXPECT_NEAR(channel_average_fidelity(c, ideal_single_qubit(sqrt_x())), 1.0, 1e-9);
  EXPECT_LT(channel_leakage(c, 2), 1e-9);
}

TEST(ChannelTest, NoisyChannelMatchesDensityEvolution) {
  std::mt19937_64 rng(13);
  const NoiseModel noise = transmon_noise(TransmonRates{5e-6, 3e-6, 4e-6, 0.0});
  const PulseSchedule s = synthesize_nhqc(GateSpec(0.4, 2.0, 1.0), kOmegaPaper);
  const Channel c = evolve_channel(lambda_system(s), noise);
  const DensityMatrix rho0 = test::random_density(3, rng);
  const auto frames = evolve_density(rho0, s, noise);
  EXPECT_LT(max_abs(c.apply(rho0.entries()) - frames.back().state.entries()), 1e-10);
}

TEST(ChannelTest, RungeKuttaAgreesWithExponential) {
  const NoiseModel noise = transmon_noise(TransmonRates{});
  const PulseSchedule s = synthesize_tounhqc(GateSpec(0.4, 2.0, 1.0), kOmegaPaper);
  IntegratorConfig rk4;
  rk4.method = Method::Rk4;
  IntegratorConfig fine;
  fine.steps = 8000;
  const Channel a = evolve_channel(lambda_system(s), noise, fine);
  const Channel b = evolve_channel(lambda_system(s), noise, rk4);
  EXPECT_LT(max_abs(a.superop - b.superop), 1e-7);
}

TEST(ChannelTest, AverageFidelityOfDepolarizedGate) {
  // Pauli-eigenstate 2-design average of <psi|U^dag E(psi) U|psi> for
  // E = lambda U.U^dag + (1 - lambda) Tr(.) I/2, embedded in a qutrit.
  const GateSpec spec(0.9, 0.3, 1.7);
  const Operator u2 = ideal_single_qubit(spec);
  const double lambda = 0.93;
  Operator u3 = Operator::Identity(3, 3);
  u3.topLeftCorner(2, 2) = u2;
  Channel c = Channel::unitary(u3);
  Operator half_identity = Operator::Zero(3, 3);
  half_identity(0, 0) = half_identity(1, 1) = 0.5;
  const Ket w = Eigen::Map<const Ket>(half_identity.data(), 9);
  Ket trace_row = Ket::Zero(9);
  for (int k = 0; k < 3; ++k) trace_row(k * 3 + k) = 1.0;
  c.superop = lambda * c.superop + (1.0 - lambda) * w * trace_row.transpose();
  EXPECT_NEAR(channel_average_fidelity(c, u2), lambda + (1.0 - lambda) / 2.0, 1e-14);
}

TEST(ChannelTest, LeakageCountsAsError) {
  // Full transfer |1> -> |e>: the |1> input keeps nothing in the qubit block.
  Operator swap = Operator::Identity(3, 3);
  swap(1, 1) = swap(2, 2) = 0.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  const Channel c = Channel::unitary(swap);
  EXPECT_NEAR(channel_leakage(c, 2), 1.0, 1e-15);
  EXPECT_NEAR(unitary_leakage(swap, 2), 1.0, 1e-15);
  // Only |0><0| survives: (1 + 1) / 6.
  EXPECT_NEAR(channel_average_fidelity(c, Operator::Identity(2, 2)), 1.0 / 3.0, 1e-15);
}

}  // namespace
}  // namespace holo
