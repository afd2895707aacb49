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

#include "holonomy/two_qubit.hpp"

#include <cmath>

namespace holo {

namespace {

using namespace composite;

Operator transition(int to, int from) {
  Operator m = Operator::Zero(kDim, kDim);
  m(to, from) = 1.0;
  return m;
}

Complex coupling(const PulseSchedule& schedule, const ErrorInjection& err, double t) {
  const double tau = schedule.duration();
  const double tc = std::clamp(t, 0.0, tau);
  return 0.5 * (1.0 + err.amp_fraction) * schedule.omega(tc) *
         std::polar(1.0, schedule.segment_at(tc).phi1(tc));
}

// {|01>, |a>} block only.
DrivenSystem active_pair(const PulseSchedule& schedule, const ErrorInjection& err) {
  err.validate();
  const double delta = err.detuning(schedule.omega0());
  return DrivenSystem{2, schedule.duration(), schedule.breakpoints(),
                      [schedule, err, delta](double t) {
                        Operator h = Operator::Zero(2, 2);
                        h(0, 1) = coupling(schedule, err, t);
                        h(1, 0) = std::conj(h(0, 1));
                        h(1, 1) = delta;
                        return h;
                      }};
}

StateVector ramsey_initial_state() {
  Ket psi = Ket::Zero(kDim);
  psi(k00) = 1.0 / std::sqrt(2.0);
  psi(k01) = Complex(0.0, -1.0 / std::sqrt(2.0));
  return trusted_state(psi);
}

double target_excited(const Operator& rho) {
  return rho(k01, k01).real() + rho(k11, k11).real();
}

Operator target_drive(double theta, double rabi) {
  Operator h = Operator::Zero(kDim, kDim);
  const Complex up = 0.5 * rabi * std::polar(1.0, theta);  // <1|H|0> for the target
  for (int base : {k00, k10}) {
    h(base + 1, base) = up;
    h(base, base + 1) = std::conj(up);
  }
  return h;
}

}  // namespace

NoiseModel composite_noise(const TwoQubitRates& rates) {
  NoiseModel noise;
  auto relax = [&](double t1, std::initializer_list<std::pair<int, int>> jumps) {
    if (!(t1 > 0.0) || !std::isfinite(t1)) return;
    for (auto [to, from] : jumps) noise.collapse_ops.push_back({transition(to, from), 1.0 / t1});
  };
  auto dephase = [&](double tphi, std::initializer_list<int> excited) {
    if (!(tphi > 0.0) || !std::isfinite(tphi)) return;
    Operator p = Operator::Zero(kDim, kDim);
    for (int k : excited) p(k, k) = 1.0;
    noise.collapse_ops.push_back({p, 2.0 / tphi});
  };
  relax(rates.t1_control, {{k00, k10}, {k01, k11}});
  relax(rates.t1_target, {{k00, k01}, {k10, k11}});
  relax(rates.t1_ancilla, {{k00, kAncilla}});
  dephase(rates.tphi_control, {k10, k11});
  dephase(rates.tphi_target, {k01, k11});
  dephase(rates.tphi_ancilla, {kAncilla});
  return noise;
}

PulseSchedule build_cphase_schedule(double gamma, double g_eff, Scheme scheme) {
  if (!(g_eff > 0.0)) throw InvalidArgument("g_eff must be positive");
  // Validates gamma in (0, 2 pi) before mirroring.
  const GateSpec requested(0.0, 0.0, gamma);
  // theta = pi puts the whole drive on the |1>-slot transition (theta_mix = 0).
  return synthesize(scheme, GateSpec(kPi, 0.0, kTwoPi - requested.gamma()), g_eff);
}

DrivenSystem composite_system(const PulseSchedule& schedule, const ErrorInjection& err) {
  err.validate();
  const double delta = err.detuning(schedule.omega0());
  return DrivenSystem{kDim, schedule.duration(), schedule.breakpoints(),
                      [schedule, err, delta](double t) {
                        Operator h = Operator::Zero(kDim, kDim);
                        h(k01, kAncilla) = coupling(schedule, err, t);
                        h(kAncilla, k01) = std::conj(h(k01, kAncilla));
                        h(kAncilla, kAncilla) = delta;
                        return h;
                      }};
}

CphaseResult cphase_propagator(const PulseSchedule& schedule, const ErrorInjection& err,
                               const IntegratorConfig& config) {
  const Operator pair = propagate(active_pair(schedule, err), config);
  CphaseResult out;
  out.u5 = Operator::Identity(kDim, kDim);
  const int idx[2] = {k01, kAncilla};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out.u5(idx[r], idx[c]) = pair(r, c);
  }
  out.u4 = out.u5.topLeftCorner(kComputationalDim, kComputationalDim);
  out.leakage = unitary_leakage(out.u5, kComputationalDim);
  return out;
}

Channel cphase_channel(const PulseSchedule& schedule, const ErrorInjection& err,
                       const NoiseModel& noise, const IntegratorConfig& config) {
  if (noise.empty()) return Channel::unitary(cphase_propagator(schedule, err, config).u5);
  return evolve_channel(composite_system(schedule, err), noise, config);
}

Operator target_analysis_rotation(double theta) {
  const Eigen::Matrix2cd axis = std::cos(theta) * pauli::x() + std::sin(theta) * pauli::y();
  const Eigen::Matrix2cd r =
      std::cos(kPi / 4.0) * pauli::identity() - Complex(0.0, std::sin(kPi / 4.0)) * axis;
  Operator out = Operator::Identity(kDim, kDim);
  out.topLeftCorner(kComputationalDim, kComputationalDim) =
      tensor_product(Operator(pauli::identity()), Operator(r));
  return out;
}

std::vector<RamseyPoint> ramsey_protocol(const RamseyConfig& config) {
  if (config.theta_grid.empty()) throw InvalidArgument("Ramsey theta grid is empty");
  config.noise.validate(kDim);

  Operator rho = ramsey_initial_state().projector().entries();
  if (config.gate_on) {
    const PulseSchedule schedule =
        build_cphase_schedule(config.gamma, config.model.g_eff, config.scheme);
    rho = cphase_channel(schedule, config.err, config.noise, config.integrator).apply(rho);
  }

  std::vector<RamseyPoint> out;
  out.reserve(config.theta_grid.size());
  for (double theta : config.theta_grid) {
    Operator final_rho;
    if (config.analysis == AnalysisPulse::Ideal) {
      const Operator r = target_analysis_rotation(theta);
      final_rho = r * rho * r.adjoint();
    } else {
      const double duration = kPi / (2.0 * config.analysis_rabi);
      const Operator h = target_drive(theta, config.analysis_rabi);
      const DrivenSystem pulse{kDim, duration, {}, [h](double) { return h; }};
      IntegratorConfig ic = config.integrator;
      ic.dt.reset();
      final_rho = evolve_channel(pulse, config.noise, ic).apply(rho);
    }
    out.push_back({theta, target_excited(final_rho)});
  }
  return out;
}

FringeFit fit_fringe(const std::vector<RamseyPoint>& points) {
  if (points.size() < 3) throw InvalidArgument("fringe fit needs at least 3 points");
  Eigen::MatrixXd a(points.size(), 3);
  Eigen::VectorXd b(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    a(k, 0) = 1.0;
    a(k, 1) = std::cos(points[k].theta);
    a(k, 2) = std::sin(points[k].theta);
    b(k) = points[k].p_excited;
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  FringeFit fit;
  fit.offset = c(0);
  fit.amplitude = std::hypot(c(1), c(2));
  fit.phase = std::atan2(-c(2), -c(1));
  return fit;
}

double ramsey_phase_shift(const RamseyConfig& config) {
  RamseyConfig on = config;
  on.gate_on = true;
  RamseyConfig off = config;
  off.gate_on = false;
  double shift = fit_fringe(ramsey_protocol(on)).phase - fit_fringe(ramsey_protocol(off)).phase;
  shift = std::remainder(shift, kTwoPi);
  if (shift <= -kPi) shift += kTwoPi;
  return shift;
}

std::vector<PopulationFrame> population_trace(const PulseSchedule& schedule,
                                              const StateVector& initial,
                                              const NoiseModel& noise,
                                              const ErrorInjection& err,
                                              const IntegratorConfig& config) {
  if (initial.dim() != kDim) throw DimensionMismatch("initial state must have dimension 5");
  std::vector<PopulationFrame> out;
  auto push = [&out](double t, const Operator& rho) {
    PopulationFrame f;
    f.t = t;
    for (int k = 0; k < kDim; ++k) f.p[k] = rho(k, k).real();
    out.push_back(f);
  };
  const DrivenSystem system = composite_system(schedule, err);
  if (noise.empty()) {
    for (const auto& fr : evolve_pure(initial, system, config)) {
      const Ket& a = fr.state.amplitudes();
      PopulationFrame f;
      f.t = fr.t;
      for (int k = 0; k < kDim; ++k) f.p[k] = std::norm(a(k));
      out.push_back(f);
    }
  } else {
    for (const auto& fr : evolve_density(initial.projector(), system, noise, config)) {
      push(fr.t, fr.state.entries());
    }
  }
  return out;
}

}  // namespace holo
