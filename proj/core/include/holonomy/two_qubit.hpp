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

#pragma once

#include <array>
#include <vector>

#include "holonomy/evolve.hpp"
#include "holonomy/lambda_pulse.hpp"

namespace holo {

/// Ordered basis {|00>, |01>, |10>, |11>, |a>} of the control-phase model
/// (control qubit first). Only |01> couples to the ancilla state |a>.
namespace composite {
inline constexpr int k00 = 0;
inline constexpr int k01 = 1;
inline constexpr int k10 = 2;
inline constexpr int k11 = 3;
inline constexpr int kAncilla = 4;
inline constexpr int kDim = 5;
inline constexpr int kComputationalDim = 4;
}  // namespace composite

struct CompositeModel {
  double g_eff = kTwoPi * 5e6;  // rad/s
};

/// Qubit and ancilla lifetimes in seconds; non-positive disables a channel.
struct TwoQubitRates {
  double t1_control = 20e-6;
  double t1_target = 20e-6;
  double t1_ancilla = 20e-6;
  double tphi_control = 0.0;
  double tphi_target = 0.0;
  double tphi_ancilla = 0.0;
};

NoiseModel composite_noise(const TwoQubitRates& rates);

/// Drives the |01> <-> |a> loop so that |01> returns with phase e^{i gamma}.
/// Both loop families return the bright state with e^{-i loop_angle}, so the
/// loop is run with loop_angle = 2 pi - gamma (same duration as gamma).
PulseSchedule build_cphase_schedule(double gamma, double g_eff, Scheme scheme);

/// 5-level Hamiltonian: (Omega(t)/2)(1 + dA) e^{i phi1(t)} |01><a| + h.c. + Delta |a><a|.
DrivenSystem composite_system(const PulseSchedule& schedule, const ErrorInjection& err = {});

struct CphaseResult {
  Eigen::Matrix4cd u4;  // computational block
  Operator u5;
  double leakage = 0.0;
};

/// Unitary path. Spectator rows and columns are exactly the identity.
CphaseResult cphase_propagator(const PulseSchedule& schedule, const ErrorInjection& err = {},
                               const IntegratorConfig& config = {});

/// Lindblad path over all five levels.
Channel cphase_channel(const PulseSchedule& schedule, const ErrorInjection& err,
                       const NoiseModel& noise, const IntegratorConfig& config = {});

enum class AnalysisPulse { Ideal, Pulsed };

struct RamseyConfig {
  bool gate_on = true;
  double gamma = kPi / 4.0;
  std::vector<double> theta_grid;
  Scheme scheme = Scheme::Tounhqc;
  CompositeModel model;
  ErrorInjection err;
  NoiseModel noise;
  IntegratorConfig integrator;
  AnalysisPulse analysis = AnalysisPulse::Ideal;
  double analysis_rabi = kTwoPi * 20e6;  // rad/s, pulsed mode only
};

struct RamseyPoint {
  double theta = 0.0;
  double p_excited = 0.0;  // target qubit in |1>
};

/// Target prepared in (|0> - i|1>)/sqrt(2) with control and ancilla in the
/// ground state, optional gate, then a pi/2 rotation about (cos t, sin t, 0).
std::vector<RamseyPoint> ramsey_protocol(const RamseyConfig& config);

/// P(theta) = offset - amplitude cos(theta - phase), linear least squares.
struct FringeFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
};
FringeFit fit_fringe(const std::vector<RamseyPoint>& points);

/// Fringe phase with the gate minus the reference fringe, wrapped to (-pi, pi].
double ramsey_phase_shift(const RamseyConfig& config);

/// pi/2 rotation about (cos t, sin t, 0) on the target qubit, identity on |a>.
Operator target_analysis_rotation(double theta);

struct PopulationFrame {
  double t = 0.0;
  std::array<double, composite::kDim> p{};
};

std::vector<PopulationFrame> population_trace(const PulseSchedule& schedule,
                                              const StateVector& initial,
                                              const NoiseModel& noise,
                                              const ErrorInjection& err = {},
                                              const IntegratorConfig& config = {});

}  // namespace holo
