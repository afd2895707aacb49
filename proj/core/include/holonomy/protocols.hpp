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

#include <optional>
#include <vector>

#include "holonomy/evolve.hpp"
#include "holonomy/lambda_pulse.hpp"
#include "holonomy/two_qubit.hpp"

namespace holo {

/// Fidelity map of the gamma phase gate over amplitude and relative detuning
/// errors. Runs on the control-phase model with the control in |0> and the
/// target prepared in (|0> - i|1>)/sqrt(2); the output target state is
/// compared with (|0> - i e^{i gamma}|1>)/sqrt(2) by unattenuated fidelity.
struct ScanConfig {
  Scheme scheme = Scheme::Tounhqc;
  double gamma = kPi / 4.0;
  CompositeModel model;
  double amp_min = -0.05;
  double amp_max = 0.05;
  double det_min = -0.05;  // detuning in units of the coupling strength
  double det_max = 0.05;
  int resolution = 21;
  NoiseModel noise;  // on the five-level composite space
  IntegratorConfig integrator;
  int threads = 1;

  void validate() const;
};

struct ScanResult {
  std::vector<double> amp_axis;
  std::vector<double> det_axis;
  Eigen::MatrixXd fidelity;  // rows follow amp_axis, columns det_axis
};

ScanResult robustness_scan(const ScanConfig& config);

/// Single scan point; exposed for tests and the CLI.
double scan_point_fidelity(const ScanConfig& config, double amp_fraction,
                           double detuning_fraction);

enum class CompareTarget { ControlPhase, SingleQubit };

struct CompareConfig {
  double gamma = kPi / 4.0;
  /// Coupling strength for the control-phase target, Omega0 for the single-qubit target.
  double omega0 = kTwoPi * 5e6;
  CompareTarget target = CompareTarget::ControlPhase;
  /// Five-level composite noise for ControlPhase, qutrit noise for SingleQubit.
  NoiseModel noise;
  ErrorInjection err;
  IntegratorConfig integrator;
};

/// T1-limited reference configuration: control phase gate at g/2pi = 5 MHz,
/// every T1 = 20 us, no pure dephasing.
CompareConfig t1_limited_compare_config(double gamma = kPi / 4.0);

struct CompareReport {
  double tau_tounhqc = 0.0;
  double tau_nhqc = 0.0;
  double fidelity_tounhqc = 0.0;
  double fidelity_nhqc = 0.0;
  double error_tounhqc = 0.0;
  double error_nhqc = 0.0;
  /// (e_N - e_T) / e_N; empty when both errors are below 1e-5.
  std::optional<double> error_reduction;
};

CompareReport compare_schemes(const CompareConfig& config);

struct PopulationRow {
  double t = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
  double pe = 0.0;
};

struct BlochRow {
  double t = 0.0;
  double x = 0.0;  // NaN when the qubit block is empty
  double y = 0.0;
  double z = 0.0;
  double population = 0.0;
};

struct TrajectoryReport {
  std::vector<PopulationRow> populations;
  std::vector<BlochRow> bloch;
};

/// Qutrit trajectory. Pure-state evolution when `noise` is empty.
TrajectoryReport trajectory_report(const PulseSchedule& schedule, const StateVector& initial,
                                   const NoiseModel& noise, const ErrorInjection& err = {},
                                   const IntegratorConfig& config = {});

}  // namespace holo
