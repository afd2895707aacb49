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

#include <functional>
#include <optional>
#include <vector>

#include "holonomy/lambda_pulse.hpp"
#include "holonomy/quantum.hpp"

namespace holo {

class StepSizeError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Control imperfections. Drive amplitudes are scaled by (1 + amp_fraction);
/// the auxiliary level is shifted by detuning_fraction * omega0 + detuning_abs.
struct ErrorInjection {
  double amp_fraction = 0.0;
  double detuning_fraction = 0.0;
  double detuning_abs = 0.0;  // rad/s

  void validate() const;
  double detuning(double omega0) const { return detuning_fraction * omega0 + detuning_abs; }
};

struct CollapseOperator {
  Operator op;
  double rate = 0.0;  // 1/s
};

/// Markovian noise: each term contributes rate (L rho L^dag - {L^dag L, rho}/2).
struct NoiseModel {
  std::vector<CollapseOperator> collapse_ops;

  bool empty() const;
  double max_rate() const;
  void validate(int dim) const;
};

/// Times in seconds. A non-positive or infinite value disables the channel.
struct TransmonRates {
  double t1_excited = 20e-6;  // |e> -> |0>
  double t1_one = 10e-6;      // |1> -> |e>
  double tphi_excited = 0.0;
  double tphi_one = 0.0;
};

/// Ladder relaxation |0><e|, |e><1| with rates 1/T1, and pure dephasing
/// sqrt(2/Tphi) |k><k| so that the coherence rho_0k decays as exp(-t/Tphi).
NoiseModel transmon_noise(const TransmonRates& rates);

enum class Method { PiecewiseExponential, Rk4 };

struct IntegratorConfig {
  /// Explicit step; when unset the step is duration / steps.
  std::optional<double> dt;
  int steps = 2000;
  Method method = Method::PiecewiseExponential;
  int record_stride = 20;
};

/// Time-dependent Hamiltonian of fixed dimension. Breakpoints mark
/// discontinuities; integration grids always place a node on them.
struct DrivenSystem {
  int dim = 0;
  double duration = 0.0;
  std::vector<double> breakpoints;
  std::function<Operator(double)> hamiltonian;
};

struct TimeStep {
  double t0 = 0.0;
  double dt = 0.0;
};

/// Uniform steps inside each breakpoint-delimited interval. Throws
/// StepSizeError if the requested step exceeds duration / 100.
std::vector<TimeStep> build_time_grid(double duration,
                                      const std::vector<double>& breakpoints,
                                      const IntegratorConfig& config);

/// Rotating-frame Lambda Hamiltonian on {|0>, |1>, |e>}:
/// (O0e/2) e^{i phi0}|0><e| + (O1e/2) e^{i phi1}|1><e| + h.c. + Delta |e><e|.
/// Throws InvalidArgument if t lies outside [0, duration].
Operator assemble_hamiltonian(const PulseSchedule& schedule, double t,
                              const ErrorInjection& err = {});

DrivenSystem lambda_system(const PulseSchedule& schedule,
                           const ErrorInjection& err = {});

/// Time-ordered product of exp(-i H(t_k + dt/2) dt) (or RK4 on U' = -iHU).
Operator propagate(const DrivenSystem& system, const IntegratorConfig& config = {});
Operator propagator(const PulseSchedule& schedule, const ErrorInjection& err = {},
                    const IntegratorConfig& config = {});

struct PureFrame {
  double t;
  StateVector state;
};

struct MixedFrame {
  double t;
  DensityMatrix state;
};

/// Records t = 0, every record_stride-th step, and the final time.
std::vector<PureFrame> evolve_pure(const StateVector& psi0, const DrivenSystem& system,
                                   const IntegratorConfig& config = {});
std::vector<PureFrame> evolve_pure(const StateVector& psi0, const PulseSchedule& schedule,
                                   const ErrorInjection& err = {},
                                   const IntegratorConfig& config = {});

/// Lindblad evolution. Throws StepSizeError when max rate * dt >= 0.01.
std::vector<MixedFrame> evolve_density(const DensityMatrix& rho0,
                                       const DrivenSystem& system,
                                       const NoiseModel& noise,
                                       const IntegratorConfig& config = {});
std::vector<MixedFrame> evolve_density(const DensityMatrix& rho0,
                                       const PulseSchedule& schedule,
                                       const NoiseModel& noise,
                                       const ErrorInjection& err = {},
                                       const IntegratorConfig& config = {});

/// Linear map on column-stacked density matrices: vec(A rho B) = (B^T (x) A) vec(rho).
struct Channel {
  int dim = 0;
  Operator superop;

  static Channel identity(int dim);
  static Channel unitary(const Operator& u);

  DensityMatrix apply(const DensityMatrix& rho) const;
  Operator apply(const Operator& rho) const;
  /// this after first.
  Channel after(const Channel& first) const;
};

/// Liouvillian superoperator for H and the given noise.
Operator liouvillian(const Operator& hamiltonian, const NoiseModel& noise);

/// Process map of the full schedule. Exact unitary channel when noise is empty.
Channel evolve_channel(const DrivenSystem& system, const NoiseModel& noise,
                       const IntegratorConfig& config = {});

/// Average gate fidelity of `channel` against `ideal` on the leading
/// ideal.rows() levels; population leaving that block counts as error.
double channel_average_fidelity(const Channel& channel, const Operator& ideal);

/// 1 - min over computational basis inputs of the population kept in the
/// leading `comp_dim` levels.
double channel_leakage(const Channel& channel, int comp_dim);
double unitary_leakage(const Operator& u, int comp_dim);

}  // namespace holo
