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

#include "holonomy/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

namespace holo {

namespace {

constexpr double kBoundarySlack = 1e-12;  // relative to duration

Operator projector_on(int dim, int from, int to) {
  Operator m = Operator::Zero(dim, dim);
  m(from, to) = 1.0;
  return m;
}

bool should_record(std::size_t step, std::size_t total, int stride) {
  return step == total || step % std::size_t(stride) == 0;
}

Ket vec(const Operator& rho) {
  return Eigen::Map<const Ket>(rho.data(), rho.size());
}

Operator unvec(const Ket& v, int dim) {
  return Eigen::Map<const Operator>(v.data(), dim, dim);
}

void validate_config(const IntegratorConfig& config) {
  if (config.record_stride <= 0) throw InvalidArgument("record_stride must be positive");
  if (!config.dt && config.steps < 100) {
    throw StepSizeError("at least 100 integration steps per schedule are required");
  }
}

Ket rk4_pure_step(const DrivenSystem& sys, const Ket& psi, double t, double dt) {
  const Complex mi(0.0, -1.0);
  const Operator h0 = sys.hamiltonian(t);
  const Operator hm = sys.hamiltonian(t + dt / 2.0);
  const Operator h1 = sys.hamiltonian(t + dt);
  const Ket k1 = mi * (h0 * psi);
  const Ket k2 = mi * (hm * (psi + 0.5 * dt * k1));
  const Ket k3 = mi * (hm * (psi + 0.5 * dt * k2));
  const Ket k4 = mi * (h1 * (psi + dt * k3));
  return psi + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Operator rk4_matrix_step(const Operator& l0, const Operator& lm, const Operator& l1,
                         const Operator& x, double dt) {
  const Operator k1 = l0 * x;
  const Operator k2 = lm * (x + 0.5 * dt * k1);
  const Operator k3 = lm * (x + 0.5 * dt * k2);
  const Operator k4 = l1 * (x + dt * k3);
  return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_noise_step(const NoiseModel& noise, const std::vector<TimeStep>& grid) {
  double max_dt = 0.0;
  for (const auto& s : grid) max_dt = std::max(max_dt, s.dt);
  if (noise.max_rate() * max_dt >= 0.01) {
    throw StepSizeError("integration step too large for the noise rates (rate * dt >= 0.01)");
  }
}

}  // namespace

void ErrorInjection::validate() const {
  if (!std::isfinite(amp_fraction) || !std::isfinite(detuning_fraction) ||
      !std::isfinite(detuning_abs)) {
    throw InvalidArgument("error injection values must be finite");
  }
  if (amp_fraction <= -1.0) throw InvalidArgument("amplitude error must exceed -1");
}

bool NoiseModel::empty() const {
  return std::all_of(collapse_ops.begin(), collapse_ops.end(),
                     [](const CollapseOperator& c) { return c.rate == 0.0; });
}

double NoiseModel::max_rate() const {
  double r = 0.0;
  for (const auto& c : collapse_ops) r = std::max(r, c.rate);
  return r;
}

void NoiseModel::validate(int dim) const {
  for (const auto& c : collapse_ops) {
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) {
      throw InvalidArgument("collapse rates must be finite and non-negative");
    }
    if (c.op.rows() != dim || c.op.cols() != dim) {
      throw DimensionMismatch("collapse operator dimension does not match the system");
    }
  }
}

NoiseModel transmon_noise(const TransmonRates& rates) {
  using namespace level;
  NoiseModel noise;
  auto add = [&](double time, Operator op, double scale) {
    if (time > 0.0 && std::isfinite(time)) {
      noise.collapse_ops.push_back({std::move(op), scale / time});
    }
  };
  add(rates.t1_excited, projector_on(kQutritDim, kZero, kExcited), 1.0);
  add(rates.t1_one, projector_on(kQutritDim, kExcited, kOne), 1.0);
  add(rates.tphi_excited, projector_on(kQutritDim, kExcited, kExcited), 2.0);
  add(rates.tphi_one, projector_on(kQutritDim, kOne, kOne), 2.0);
  return noise;
}

std::vector<TimeStep> build_time_grid(double duration,
                                      const std::vector<double>& breakpoints,
                                      const IntegratorConfig& config) {
  validate_config(config);
  if (!(duration > 0.0)) throw InvalidArgument("duration must be positive");
  const double nominal = config.dt ? *config.dt : duration / config.steps;
  if (!(nominal > 0.0)) throw StepSizeError("integration step must be positive");
  if (nominal > duration / 100.0 * (1.0 + 1e-12)) {
    throw StepSizeError("integration step exceeds duration / 100");
  }

  std::vector<double> nodes{0.0};
  for (double b : breakpoints) {
    if (b > nodes.back() + kBoundarySlack * duration && b < duration * (1.0 - kBoundarySlack)) {
      nodes.push_back(b);
    }
  }
  nodes.push_back(duration);

  std::vector<TimeStep> grid;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double len = nodes[k + 1] - nodes[k];
    const auto n = std::max<long>(1, long(std::ceil(len / nominal - 1e-9)));
    const double h = len / double(n);
    for (long j = 0; j < n; ++j) grid.push_back({nodes[k] + double(j) * h, h});
  }
  return grid;
}

Operator assemble_hamiltonian(const PulseSchedule& schedule, double t,
                              const ErrorInjection& err) {
  using namespace level;
  const double tau = schedule.duration();
  if (t < -kBoundarySlack * tau || t > tau * (1.0 + kBoundarySlack)) {
    throw InvalidArgument("time lies outside the schedule");
  }
  const DriveSample d = schedule.drive(std::clamp(t, 0.0, tau));
  const double scale = 0.5 * (1.0 + err.amp_fraction);
  Operator h = Operator::Zero(kQutritDim, kQutritDim);
  h(kZero, kExcited) = scale * d.omega_0e * std::polar(1.0, d.phi0);
  h(kOne, kExcited) = scale * d.omega_1e * std::polar(1.0, d.phi1);
  h(kExcited, kZero) = std::conj(h(kZero, kExcited));
  h(kExcited, kOne) = std::conj(h(kOne, kExcited));
  h(kExcited, kExcited) = err.detuning(schedule.omega0());
  return h;
}

DrivenSystem lambda_system(const PulseSchedule& schedule, const ErrorInjection& err) {
  err.validate();
  return DrivenSystem{level::kQutritDim, schedule.duration(), schedule.breakpoints(),
                      [schedule, err](double t) { return assemble_hamiltonian(schedule, t, err); }};
}

Operator propagate(const DrivenSystem& system, const IntegratorConfig& config) {
  const auto grid = build_time_grid(system.duration, system.breakpoints, config);
  Operator u = Operator::Identity(system.dim, system.dim);
  for (const auto& s : grid) {
    if (config.method == Method::PiecewiseExponential) {
      u = hermitian_propagator(system.hamiltonian(s.t0 + 0.5 * s.dt), s.dt) * u;
    } else {
      const Complex mi(0.0, -1.0);
      u = rk4_matrix_step(mi * system.hamiltonian(s.t0),
                          mi * system.hamiltonian(s.t0 + 0.5 * s.dt),
                          mi * system.hamiltonian(s.t0 + s.dt), u, s.dt);
    }
  }
  return u;
}

Operator propagator(const PulseSchedule& schedule, const ErrorInjection& err,
                    const IntegratorConfig& config) {
  return propagate(lambda_system(schedule, err), config);
}

std::vector<PureFrame> evolve_pure(const StateVector& psi0, const DrivenSystem& system,
                                   const IntegratorConfig& config) {
  if (psi0.dim() != system.dim) throw DimensionMismatch("initial state dimension mismatch");
  const auto grid = build_time_grid(system.duration, system.breakpoints, config);
  std::vector<PureFrame> frames{{0.0, psi0}};
  Ket psi = psi0.amplitudes();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& s = grid[k];
    if (config.method == Method::PiecewiseExponential) {
      psi = hermitian_propagator(system.hamiltonian(s.t0 + 0.5 * s.dt), s.dt) * psi;
    } else {
      psi = rk4_pure_step(system, psi, s.t0, s.dt);
    }
    if (should_record(k + 1, grid.size(), config.record_stride)) {
      frames.push_back({s.t0 + s.dt, trusted_state(psi)});
    }
  }
  return frames;
}

std::vector<PureFrame> evolve_pure(const StateVector& psi0, const PulseSchedule& schedule,
                                   const ErrorInjection& err, const IntegratorConfig& config) {
  return evolve_pure(psi0, lambda_system(schedule, err), config);
}

Operator liouvillian(const Operator& hamiltonian, const NoiseModel& noise) {
  const auto d = hamiltonian.rows();
  const Operator id = Operator::Identity(d, d);
  const Complex mi(0.0, -1.0);
  Operator l = mi * (tensor_product(id, hamiltonian) -
                     tensor_product(hamiltonian.transpose(), id));
  for (const auto& c : noise.collapse_ops) {
    if (c.rate == 0.0) continue;
    const Operator ldl = c.op.adjoint() * c.op;
    l += c.rate * (tensor_product(c.op.conjugate(), c.op) -
                   0.5 * tensor_product(id, ldl) - 0.5 * tensor_product(ldl.transpose(), id));
  }
  return l;
}

std::vector<MixedFrame> evolve_density(const DensityMatrix& rho0, const DrivenSystem& system,
                                       const NoiseModel& noise,
                                       const IntegratorConfig& config) {
  if (rho0.dim() != system.dim) throw DimensionMismatch("initial state dimension mismatch");
  noise.validate(system.dim);
  const auto grid = build_time_grid(system.duration, system.breakpoints, config);
  check_noise_step(noise, grid);

  std::vector<MixedFrame> frames{{0.0, rho0}};
  Ket v = vec(rho0.entries());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& s = grid[k];
    if (config.method == Method::PiecewiseExponential) {
      const Operator gen = liouvillian(system.hamiltonian(s.t0 + 0.5 * s.dt), noise) * s.dt;
      v = gen.exp() * v;
    } else {
      v = rk4_matrix_step(liouvillian(system.hamiltonian(s.t0), noise),
                          liouvillian(system.hamiltonian(s.t0 + 0.5 * s.dt), noise),
                          liouvillian(system.hamiltonian(s.t0 + s.dt), noise), v, s.dt);
    }
    if (should_record(k + 1, grid.size(), config.record_stride)) {
      frames.push_back({s.t0 + s.dt, trusted_density(unvec(v, system.dim))});
    }
  }
  return frames;
}

std::vector<MixedFrame> evolve_density(const DensityMatrix& rho0,
                                       const PulseSchedule& schedule,
                                       const NoiseModel& noise, const ErrorInjection& err,
                                       const IntegratorConfig& config) {
  return evolve_density(rho0, lambda_system(schedule, err), noise, config);
}

Channel Channel::identity(int dim) {
  return {dim, Operator::Identity(dim * dim, dim * dim)};
}

Channel Channel::unitary(const Operator& u) {
  return {int(u.rows()), tensor_product(u.conjugate(), u)};
}

Operator Channel::apply(const Operator& rho) const {
  if (rho.rows() != dim) throw DimensionMismatch("channel input dimension mismatch");
  return unvec(superop * vec(rho), dim);
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
  return trusted_density(apply(rho.entries()));
}

Channel Channel::after(const Channel& first) const {
  if (first.dim != dim) throw DimensionMismatch("channel composition dimension mismatch");
  return {dim, superop * first.superop};
}

Channel evolve_channel(const DrivenSystem& system, const NoiseModel& noise,
                       const IntegratorConfig& config) {
  noise.validate(system.dim);
  if (noise.empty()) return Channel::unitary(propagate(system, config));

  const auto grid = build_time_grid(system.duration, system.breakpoints, config);
  check_noise_step(noise, grid);
  const int d2 = system.dim * system.dim;
  Operator s = Operator::Identity(d2, d2);
  for (const auto& step : grid) {
    if (config.method == Method::PiecewiseExponential) {
      const Operator gen =
          liouvillian(system.hamiltonian(step.t0 + 0.5 * step.dt), noise) * step.dt;
      s = gen.exp() * s;
    } else {
      s = rk4_matrix_step(liouvillian(system.hamiltonian(step.t0), noise),
                          liouvillian(system.hamiltonian(step.t0 + 0.5 * step.dt), noise),
                          liouvillian(system.hamiltonian(step.t0 + step.dt), noise), s,
                          step.dt);
    }
  }
  return {system.dim, s};
}

double channel_average_fidelity(const Channel& channel, const Operator& ideal) {
  const auto d = int(ideal.rows());
  if (d > channel.dim) throw DimensionMismatch("ideal gate larger than channel");
  // (sum_ij <i|M(|i><j|)|j> + Tr M(I)) / (d (d + 1)), M = U^dag P E(.) P U
  Complex entangled = 0.0;
  double kept = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Operator in = Operator::Zero(channel.dim, channel.dim);
      in(i, j) = 1.0;
      const Operator out = channel.apply(in).topLeftCorner(d, d);
      entangled += (ideal.col(i).adjoint() * out * ideal.col(j))(0, 0);
      if (i == j) kept += out.trace().real();
    }
  }
  return std::clamp((entangled.real() + kept) / (double(d) * (d + 1.0)), 0.0, 1.0);
}

double channel_leakage(const Channel& channel, int comp_dim) {
  double worst = 1.0;
  for (int i = 0; i < comp_dim; ++i) {
    Operator in = Operator::Zero(channel.dim, channel.dim);
    in(i, i) = 1.0;
    const Operator out = channel.apply(in);
    worst = std::min(worst, out.topLeftCorner(comp_dim, comp_dim).trace().real());
  }
  return std::max(0.0, 1.0 - worst);
}

double unitary_leakage(const Operator& u, int comp_dim) {
  double worst = 1.0;
  for (int i = 0; i < comp_dim; ++i) {
    worst = std::min(worst, u.col(i).head(comp_dim).squaredNorm());
  }
  return std::max(0.0, 1.0 - worst);
}

}  // namespace holo
