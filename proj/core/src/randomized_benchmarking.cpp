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

#include "holonomy/randomized_benchmarking.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <string>

#include "holonomy/parallel.hpp"

namespace holo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Channel depolarized(const Eigen::Matrix2cd& u, double lambda) {
  // vec(I) vec(I)^T / 2 maps rho to Tr(rho) I / 2
  Ket id_vec = Ket::Zero(4);
  id_vec(0) = 1.0;
  id_vec(3) = 1.0;
  Channel c = Channel::unitary(u);
  c.superop = lambda * c.superop + (1.0 - lambda) * 0.5 * id_vec * id_vec.transpose();
  return c;
}

}  // namespace

SimulatedChannels::SimulatedChannels(Scheme scheme, double omega0, NoiseModel noise,
                                     ErrorInjection err, IntegratorConfig integrator,
                                     int threads)
    : scheme_(scheme),
      omega0_(omega0),
      noise_(std::move(noise)),
      err_(err),
      integrator_(integrator),
      cliffords_(kCliffordCount) {
  if (!(omega0_ > 0.0)) throw InvalidArgument("omega0 must be positive");
  noise_.validate(level::kQutritDim);
  err_.validate();
  parallel_for(kCliffordCount, threads,
               [this](std::size_t k) { cliffords_[k] = simulate(compile_clifford(int(k))); });
}

Channel SimulatedChannels::simulate(const std::optional<GateSpec>& spec) const {
  if (!spec) return Channel::identity(level::kQutritDim);
  const PulseSchedule schedule = synthesize(scheme_, *spec, omega0_);
  return evolve_channel(lambda_system(schedule, err_), noise_, integrator_);
}

const Channel& SimulatedChannels::clifford(int index) const {
  if (index < 0 || index >= kCliffordCount) throw InvalidArgument("Clifford index out of range");
  return cliffords_[index];
}

Channel SimulatedChannels::gate(const Eigen::Matrix2cd& ideal) const {
  return simulate(to_gate_spec(axis_angle_decompose(ideal)));
}

Channel SimulatedChannels::idle_like(const GateSpec& spec) const {
  const double duration = synthesize(scheme_, spec, omega0_).duration();
  return evolve_channel(lambda_system(PulseSchedule::idle(duration)), noise_, integrator_);
}

DepolarizingChannels::DepolarizingChannels(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidArgument("lambda must lie in (0, 1]");
  for (const auto& c : clifford_group()) cliffords_.push_back(depolarized(c.matrix, lambda_));
}

const Channel& DepolarizingChannels::clifford(int index) const {
  if (index < 0 || index >= kCliffordCount) throw InvalidArgument("Clifford index out of range");
  return cliffords_[index];
}

Channel DepolarizingChannels::gate(const Eigen::Matrix2cd& ideal) const {
  return depolarized(ideal, lambda_);
}

Channel DepolarizingChannels::idle_like(const GateSpec& /*spec*/) const {
  return depolarized(Eigen::Matrix2cd::Identity(), lambda_);
}

std::string_view to_string(RBMode mode) {
  switch (mode) {
    case RBMode::Standard: return "standard";
    case RBMode::Interleaved: return "interleaved";
    case RBMode::RepeatedGate: return "repeated";
  }
  return "standard";
}

RBMode parse_rb_mode(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "standard") return RBMode::Standard;
  if (lower == "interleaved") return RBMode::Interleaved;
  if (lower == "repeated") return RBMode::RepeatedGate;
  throw InvalidArgument("unknown RB mode '" + std::string(name) +
                        "' (expected standard, interleaved or repeated)");
}

void RBConfig::validate() const {
  if (sequence_lengths.size() < 3) {
    throw InvalidArgument("RB needs at least three sequence lengths for fitting");
  }
  for (std::size_t k = 0; k < sequence_lengths.size(); ++k) {
    if (sequence_lengths[k] <= 0) throw InvalidArgument("sequence lengths must be positive");
    if (k > 0 && sequence_lengths[k] <= sequence_lengths[k - 1]) {
      throw InvalidArgument("sequence lengths must be strictly increasing");
    }
  }
  if (sequences_per_length < 10) throw InvalidArgument("sequences_per_length must be >= 10");
  if (mode != RBMode::Standard && !target) {
    throw InvalidArgument("interleaved and repeated RB need a target gate");
  }
  if (shots < 0) throw InvalidArgument("shots must be non-negative");
  if (threads < 1) throw InvalidArgument("threads must be >= 1");
}

std::uint64_t sequence_seed(std::uint64_t master, std::size_t length_index,
                            std::size_t sequence_index) {
  return splitmix64(splitmix64(master ^ splitmix64(length_index)) + sequence_index);
}

RBResult rb_run(const RBConfig& config, const GateChannels& channels) {
  config.validate();
  const int dim = channels.dim();

  std::optional<Channel> target_channel;
  Eigen::Matrix2cd target_ideal = Eigen::Matrix2cd::Identity();
  if (config.target) {
    if (config.target_as_idle) {
      target_channel = channels.idle_like(*config.target);
    } else {
      target_ideal = ideal_single_qubit(*config.target);
      target_channel = channels.gate(target_ideal);
    }
  }

  const std::size_t n_lengths = config.sequence_lengths.size();
  const std::size_t per = std::size_t(config.sequences_per_length);
  std::vector<double> survival(n_lengths * per);

  parallel_for(survival.size(), config.threads, [&](std::size_t task) {
    const std::size_t li = task / per;
    const std::size_t si = task % per;
    const int m = config.sequence_lengths[li];
    std::mt19937_64 rng(sequence_seed(config.seed, li, si));

    Ket v = Ket::Zero(dim * dim);
    v(0) = 1.0;  // vec(|0><0|)
    Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
    const auto& group = clifford_group();
    for (int k = 0; k < m; ++k) {
      if (config.mode != RBMode::RepeatedGate) {
        const int c = int(rng() % kCliffordCount);
        v = channels.clifford(c).superop * v;
        total = group[c].matrix * total;
      }
      if (config.mode != RBMode::Standard) {
        v = target_channel->superop * v;
        total = target_ideal * total;
      }
    }
    const Eigen::Matrix2cd recovery = total.adjoint();
    if (const auto idx = clifford_index(recovery)) {
      v = channels.clifford(*idx).superop * v;
    } else {
      v = channels.gate(recovery).superop * v;
    }

    double p = std::clamp(v(0).real(), 0.0, 1.0);
    if (config.shots > 0) {
      std::binomial_distribution<int> shots(config.shots, p);
      p = double(shots(rng)) / double(config.shots);
    }
    survival[task] = p;
  });

  RBResult result;
  std::vector<double> ms;
  std::vector<double> fs;
  for (std::size_t li = 0; li < n_lengths; ++li) {
    SurvivalPoint pt;
    pt.m = config.sequence_lengths[li];
    pt.samples.assign(survival.begin() + long(li * per), survival.begin() + long((li + 1) * per));
    double mean = 0.0;
    for (double s : pt.samples) mean += s;
    mean /= double(per);
    double var = 0.0;
    for (double s : pt.samples) var += (s - mean) * (s - mean);
    pt.mean = mean;
    pt.stddev = per > 1 ? std::sqrt(var / double(per - 1)) : 0.0;
    ms.push_back(double(pt.m));
    fs.push_back(mean);
    result.survival.push_back(std::move(pt));
  }
  result.fit = fit_decay(ms, fs);
  return result;
}

InterleavedEstimate interleaved_gate_error(double p_ref, double p_int, int d) {
  if (d < 2) throw InvalidArgument("dimension must be >= 2");
  if (!(p_ref > 0.0)) throw InvalidArgument("reference decay must be positive");
  InterleavedEstimate est;
  est.error = (1.0 - p_int / p_ref) * double(d - 1) / double(d);
  est.fidelity = 1.0 - est.error;
  est.out_of_range = !(p_int > 0.0 && p_int <= p_ref && p_ref <= 1.0);
  return est;
}

}  // namespace holo
