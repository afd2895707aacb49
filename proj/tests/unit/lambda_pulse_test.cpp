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
#include "holonomy/lambda_pulse.hpp"

namespace holo {
namespace {

constexpr double kOmegaPaper = kTwoPi * 8.660e6;

TEST(GateSpecTest, ValidatesRanges) {
  EXPECT_THROW(GateSpec(-0.1, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(GateSpec(kPi + 0.1, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(GateSpec(0.0, 0.0, 0.0), DegenerateLoop);
  EXPECT_THROW(GateSpec(0.0, 0.0, kTwoPi), DegenerateLoop);
  EXPECT_THROW(GateSpec(0.0, 0.0, 7.0), InvalidArgument);
  EXPECT_NEAR(GateSpec(0.0, -kPi / 2.0, 1.0).phi(), 1.5 * kPi, 1e-15);
  EXPECT_NEAR(GateSpec(0.0, 5.0 * kPi, 1.0).phi(), kPi, 1e-12);
}

TEST(SchemeTest, ParseAndPrint) {
  EXPECT_EQ(parse_scheme("TOUNHQC"), Scheme::Tounhqc);
  EXPECT_EQ(parse_scheme("nhqc"), Scheme::Nhqc);
  EXPECT_EQ(to_string(Scheme::Nhqc), "nhqc");
  EXPECT_THROW(parse_scheme("adiabatic"), InvalidArgument);
}

TEST(BrightDarkTest, Examples) {
  const BrightDark z = bright_dark_basis(0.0, 0.0);
  EXPECT_NEAR(std::abs(z.bright[level::kOne]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(z.dark[level::kZero]), 1.0, 1e-15);

  const double r = 1.0 / std::sqrt(2.0);
  const BrightDark x = bright_dark_basis(kPi / 2.0, 0.0);
  EXPECT_NEAR(std::abs(x.bright[0] - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x.bright[1] - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x.dark[0] - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x.dark[1] + r), 0.0, 1e-15);
}

TEST(BrightDarkTest, OrthonormalForRandomAngles) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> th(0.0, kPi);
  std::uniform_real_distribution<double> ph(0.0, kTwoPi);
  for (int trial = 0; trial < 100; ++trial) {
    const BrightDark bd = bright_dark_basis(th(rng), ph(rng));
    EXPECT_NEAR(bd.bright.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_NEAR(bd.dark.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_LT(std::abs(bd.bright.amplitudes().dot(bd.dark.amplitudes())), 1e-12);
    EXPECT_EQ(bd.bright[level::kExcited], Complex(0.0));
  }
}

TEST(DurationTest, TimeOptimalLoop) {
  EXPECT_NEAR(tounhqc_duration(kPi / 2.0, kOmegaPaper) * 1e9, 100.0, 0.05);
  EXPECT_NEAR(tounhqc_duration(kPi, kOmegaPaper), kTwoPi / kOmegaPaper, 1e-20);
  EXPECT_NEAR(tounhqc_duration(kPi / 4.0, 1.0), std::sqrt(7.0) * kPi / 2.0, 1e-12);
  EXPECT_NEAR(tounhqc_duration(1.5 * kPi, 1.0), tounhqc_duration(0.5 * kPi, 1.0), 1e-12);
  EXPECT_THROW(tounhqc_duration(0.0, 1.0), InvalidArgument);
  EXPECT_THROW(tounhqc_duration(1.0, 0.0), InvalidArgument);
}

TEST(DurationTest, ConventionalLoop) {
  EXPECT_NEAR(nhqc_duration(kOmegaPaper) * 1e9, 115.47, 0.05);
  EXPECT_NEAR(nhqc_duration(2.0), kPi, 1e-15);
}

TEST(DurationTest, TimeOptimalNeverSlower) {
  const double tau_n = nhqc_duration(1.0);
  for (int k = 1; k <= 100; ++k) {
    const double gamma = kPi * k / 100.0;
    const double tau_t = tounhqc_duration(gamma, 1.0);
    if (k < 100) {
      EXPECT_LT(tau_t, tau_n) << gamma;
    } else {
      EXPECT_NEAR(tau_t, tau_n, 1e-12);
    }
  }
}

TEST(SynthesisTest, TimeOptimalSchedule) {
  const GateSpec sx(kPi / 2.0, 0.0, kPi / 2.0);
  const PulseSchedule s = synthesize_tounhqc(sx, kOmegaPaper);
  ASSERT_EQ(s.segments().size(), 1u);
  EXPECT_TRUE(s.breakpoints().empty());
  const double tau = s.duration();
  EXPECT_NEAR(s.segments()[0].phi1_slope, 2.0 * (kPi - kPi / 2.0) / tau, 1e-3);
  for (double t : {0.0, 0.3 * tau, tau}) {
    const DriveSample d = s.drive(t);
    EXPECT_NEAR(d.omega_0e / kTwoPi * 1e-6, 6.124, 1e-3);
    EXPECT_NEAR(d.omega_1e / kTwoPi * 1e-6, 6.124, 1e-3);
    EXPECT_NEAR(d.phi1, kPi * t / tau, 1e-12);
  }
}

TEST(SynthesisTest, MirroredSlopeAboveHalfTurn) {
  const PulseSchedule s = synthesize_tounhqc(GateSpec(0.3, 0.2, 1.5 * kPi), 1.0);
  EXPECT_LT(s.segments()[0].phi1_slope, 0.0);
}

TEST(SynthesisTest, ConventionalScheduleHasPhaseJump) {
  const double gamma = kPi / 4.0;
  const PulseSchedule s = synthesize_nhqc(GateSpec(1.0, 0.5, gamma), 2.0);
  ASSERT_EQ(s.segments().size(), 2u);
  ASSERT_EQ(s.breakpoints().size(), 1u);
  const double mid = s.breakpoints()[0];
  EXPECT_NEAR(mid, kPi / 2.0, 1e-15);
  EXPECT_NEAR(s.drive(mid).phi1 - s.drive(0.0).phi1, kPi - gamma, 1e-15);
  for (const auto& seg : s.segments()) {
    EXPECT_NEAR(seg.omega * (seg.t_end - seg.t_start), kPi, 1e-14);
    EXPECT_EQ(seg.phi1_slope, 0.0);
  }
}

TEST(ScheduleTest, AmplitudeSplitPointwise) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const GateSpec spec(kPi * u(rng), kTwoPi * u(rng), 0.05 + 3.0 * u(rng));
    for (Scheme scheme : {Scheme::Tounhqc, Scheme::Nhqc}) {
      const PulseSchedule s = synthesize(scheme, spec, 3.0).with_edge_ramp(0.1);
      for (const DriveSample& d : sample_schedule(s, s.duration() / 64.0)) {
        const double omega = s.omega(d.t);
        EXPECT_GE(omega, 0.0);
        EXPECT_NEAR(d.omega_0e * d.omega_0e + d.omega_1e * d.omega_1e, omega * omega, 1e-12);
        EXPECT_NEAR(d.phi0 - d.phi1, spec.phi(), 1e-12);
      }
    }
  }
}

TEST(ScheduleTest, RejectsGapsAndNegativeAmplitude) {
  PulseSegment a{0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  PulseSegment b{1.5, 2.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(PulseSchedule(1.0, {a, b}), InvalidArgument);
  PulseSegment neg{0.0, 1.0, -1.0, 0.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(PulseSchedule(1.0, {neg}), InvalidArgument);
  EXPECT_THROW(PulseSchedule(1.0, {}), InvalidArgument);
}

TEST(ScheduleTest, EdgeRampShape) {
  const PulseSchedule s = synthesize_tounhqc(GateSpec(kPi / 2.0, 0.0, kPi / 2.0), 1.0);
  const PulseSchedule ramped = s.with_edge_ramp(0.5);
  EXPECT_NEAR(ramped.omega(0.0), 0.0, 1e-15);
  EXPECT_NEAR(ramped.omega(ramped.duration()), 0.0, 1e-15);
  EXPECT_NEAR(ramped.omega(0.25), 0.5, 1e-12);
  EXPECT_NEAR(ramped.omega(0.5 * ramped.duration()), 1.0, 1e-15);
  EXPECT_THROW(s.with_edge_ramp(s.duration()), InvalidArgument);
}

TEST(ScheduleTest, IdleAndSampling) {
  const PulseSchedule idle = PulseSchedule::idle(5.0);
  EXPECT_EQ(idle.duration(), 5.0);
  const auto samples = sample_schedule(idle, 1.0);
  ASSERT_EQ(samples.size(), 6u);
  for (const auto& d : samples) {
    EXPECT_EQ(d.omega_0e, 0.0);
    EXPECT_EQ(d.omega_1e, 0.0);
  }
  EXPECT_EQ(samples.back().t, 5.0);
  EXPECT_THROW(sample_schedule(idle, 6.0), InvalidArgument);
  EXPECT_THROW(idle.drive(5.5), InvalidArgument);
}

TEST(LoopParamsTest, MixingAngles) {
  EXPECT_NEAR(loop_params(GateSpec(0.0, 0.0, kPi), 1.0).chi, kPi / 2.0, 1e-15);
  EXPECT_EQ(loop_params(GateSpec(0.0, 0.0, kPi), 1.0).alpha_rate, 0.0);
  const LoopParams half = loop_params(GateSpec(0.0, 0.0, kPi / 2.0), 1.0);
  EXPECT_NEAR(std::cos(half.chi), -0.5, 1e-15);
  EXPECT_NEAR(half.chi, 2.0 * kPi / 3.0, 1e-15);
}

TEST(LoopParamsTest, CyclicAndResidualsVanish) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double omega0 = 1.0 + 2.0 * u(rng);
    const LoopParams p = loop_params(GateSpec(kPi * u(rng), 0.0, 0.01 + (kPi - 0.01) * u(rng)),
                                     omega0);
    EXPECT_NEAR(p.eta(0.0), 0.0, 1e-12);
    EXPECT_NEAR(p.eta(p.duration), kPi, 1e-12);
    for (int k = 0; k <= 1000; ++k) {
      const double t = p.duration * k / 1000.0;
      ASSERT_LT(std::abs(p.amplitude_residual(t)), 1e-9);
      ASSERT_LT(std::abs(p.phase_residual(t)), 1e-9);
    }
    // Omega = -alpha' tan(chi) away from chi = pi/2.
    if (std::abs(std::cos(p.chi)) > 1e-3) {
      EXPECT_NEAR(-p.alpha_rate * std::tan(p.chi), omega0, 1e-9 * omega0);
    }
  }
}

TEST(GeometricPhaseTest, ClosedForms) {
  EXPECT_NEAR(geometric_phase(loop_params(GateSpec(0.0, 0.0, kPi), 1.0)), 0.0, 1e-15);
  const LoopParams half = loop_params(GateSpec(0.0, 0.0, kPi / 2.0), 1.0);
  EXPECT_NEAR(geometric_phase(half), 3.0 * kPi / 8.0, 1e-10);
  EXPECT_LT(std::abs(geometric_phase(half, 20000) - geometric_phase(half, 10000)), 1e-8);
}

}  // namespace
}  // namespace holo
