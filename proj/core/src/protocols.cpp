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

#include "holonomy/protocols.hpp"

#include <cmath>
#include <limits>

#include "holonomy/gates.hpp"
#include "holonomy/parallel.hpp"

namespace holo {

namespace {

constexpr double kNegligibleError = 1e-5;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[std::size_t(k)] = lo + (hi - lo) * double(k) / double(n - 1);
  return out;
}

DensityMatrix qubit_block(const Operator& rho5) {
  Operator block(2, 2);
  block << rho5(composite::k00, composite::k00), rho5(composite::k00, composite::k01),
      rho5(composite::k01, composite::k00), rho5(composite::k01, composite::k01);
  const double weight = block.trace().real();
  if (!(weight > 1e-12)) throw InvalidArgument("phase-gate output left the qubit subspace");
  return trusted_density(block / weight);
}

}  // namespace

void ScanConfig::validate() const {
  if (resolution < 5) throw InvalidArgument("scan resolution must be >= 5 per axis");
  if (!(amp_max > amp_min)) throw InvalidArgument("amplitude range is empty");
  if (!(det_max > det_min)) throw InvalidArgument("detuning range is empty");
  if (!(amp_min > -1.0)) throw InvalidArgument("amplitude error must stay above -100%");
  if (!(model.g_eff > 0.0)) throw InvalidArgument("coupling strength must be positive");
  if (threads < 1) throw InvalidArgument("threads must be >= 1");
  noise.validate(composite::kDim);
}

double scan_point_fidelity(const ScanConfig& config, double amp_fraction,
                           double detuning_fraction) {
  const PulseSchedule schedule = build_cphase_schedule(config.gamma, config.model.g_eff,
                                                       config.scheme);
  ErrorInjection err;
  err.amp_fraction = amp_fraction;
  err.detuning_fraction = detuning_fraction;

  const double r = 1.0 / std::sqrt(2.0);
  const Complex minus_i(0.0, -1.0);
  Ket psi = Ket::Zero(composite::kDim);
  psi(composite::k00) = r;
  psi(composite::k01) = minus_i * r;

  Operator rho_out;
  if (config.noise.empty()) {
    const CphaseResult res = cphase_propagator(schedule, err, config.integrator);
    const Ket out = res.u5 * psi;
    rho_out = out * out.adjoint();
  } else {
    IntegratorConfig integrator = config.integrator;
    integrator.record_stride = std::numeric_limits<int>::max();
    const auto frames = evolve_density(trusted_density(psi * psi.adjoint()),
                                       composite_system(schedule, err), config.noise,
                                       integrator);
    rho_out = frames.back().state.entries();
  }

  Ket target(2);
  target << r, minus_i * std::polar(1.0, config.gamma) * r;
  return unattenuated_fidelity(trusted_density(target * target.adjoint()), qubit_block(rho_out));
}

ScanResult robustness_scan(const ScanConfig& config) {
  config.validate();
  ScanResult result;
  result.amp_axis = linspace(config.amp_min, config.amp_max, config.resolution);
  result.det_axis = linspace(config.det_min, config.det_max, config.resolution);
  const auto n = std::size_t(config.resolution);
  result.fidelity.resize(long(n), long(n));
  parallel_for(n * n, config.threads, [&](std::size_t k) {
    const std::size_t i = k / n;
    const std::size_t j = k % n;
    result.fidelity(long(i), long(j)) =
        scan_point_fidelity(config, result.amp_axis[i], result.det_axis[j]);
  });
  return result;
}

CompareConfig t1_limited_compare_config(double gamma) {
  CompareConfig config;
  config.gamma = gamma;
  config.omega0 = kTwoPi * 5e6;
  config.target = CompareTarget::ControlPhase;
  config.noise = composite_noise(TwoQubitRates{});
  return config;
}

CompareReport compare_schemes(const CompareConfig& config) {
  if (!(config.omega0 > 0.0)) throw InvalidArgument("omega0 must be positive");
  config.err.validate();

  CompareReport report;
  for (Scheme scheme : {Scheme::Tounhqc, Scheme::Nhqc}) {
    double tau = 0.0;
    double fidelity = 0.0;
    if (config.target == CompareTarget::ControlPhase) {
      config.noise.validate(composite::kDim);
      const PulseSchedule schedule = build_cphase_schedule(config.gamma, config.omega0, scheme);
      tau = schedule.duration();
      Operator ideal = Operator::Identity(composite::kComputationalDim,
                                          composite::kComputationalDim);
      ideal(composite::k01, composite::k01) = std::polar(1.0, config.gamma);
      const Channel channel = cphase_channel(schedule, config.err, config.noise,
                                             config.integrator);
      fidelity = channel_average_fidelity(channel, ideal);
    } else {
      config.noise.validate(level::kQutritDim);
      const GateSpec spec(0.0, 0.0, config.gamma);
      const PulseSchedule schedule = synthesize(scheme, spec, config.omega0);
      tau = schedule.duration();
      const Channel channel = evolve_channel(lambda_system(schedule, config.err), config.noise,
                                             config.integrator);
      fidelity = channel_average_fidelity(channel, ideal_single_qubit(spec));
    }
    if (scheme == Scheme::Tounhqc) {
      report.tau_tounhqc = tau;
      report.fidelity_tounhqc = fidelity;
      report.error_tounhqc = 1.0 - fidelity;
    } else {
      report.tau_nhqc = tau;
      report.fidelity_nhqc = fidelity;
      report.error_nhqc = 1.0 - fidelity;
    }
  }
  if (report.error_tounhqc >= kNegligibleError || report.error_nhqc >= kNegligibleError) {
    report.error_reduction = (report.error_nhqc - report.error_tounhqc) / report.error_nhqc;
  }
  return report;
}

TrajectoryReport trajectory_report(const PulseSchedule& schedule, const StateVector& initial,
                                   const NoiseModel& noise, const ErrorInjection& err,
                                   const IntegratorConfig& config) {
  if (initial.dim() != level::kQutritDim) {
    throw DimensionMismatch("trajectory_report expects a qutrit initial state");
  }
  std::vector<MixedFrame> frames;
  if (noise.empty()) {
    for (const auto& f : evolve_pure(initial, schedule, err, config)) {
      frames.push_back({f.t, f.state.projector()});
    }
  } else {
    frames = evolve_density(initial.projector(), schedule, noise, err, config);
  }

  TrajectoryReport report;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& f : frames) {
    const DensityMatrix& rho = f.state;
    report.populations.push_back({f.t, rho.population(level::kZero), rho.population(level::kOne),
                                  rho.population(level::kExcited)});
    const double pop = rho.population(level::kZero) + rho.population(level::kOne);
    if (pop < 1e-12) {
      report.bloch.push_back({f.t, nan, nan, nan, pop});
    } else {
      const BlochPoint b = bloch_coordinates(rho);
      report.bloch.push_back({f.t, b.x, b.y, b.z, b.population});
    }
  }
  return report;
}

}  // namespace holo
