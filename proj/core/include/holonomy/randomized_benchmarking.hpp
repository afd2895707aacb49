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
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "holonomy/evolve.hpp"
#include "holonomy/fitting.hpp"
#include "holonomy/gates.hpp"

namespace holo {

/// Source of the physical process applied for each ideal single-qubit gate.
/// Survival is read as the population of level 0 of the channel space.
class GateChannels {
 public:
  virtual ~GateChannels() = default;

  virtual int dim() const = 0;
  virtual const Channel& clifford(int index) const = 0;
  /// Any single-qubit unitary, realized as one holonomic loop.
  virtual Channel gate(const Eigen::Matrix2cd& ideal) const = 0;
  /// Identity lasting as long as `spec` takes to execute.
  virtual Channel idle_like(const GateSpec& spec) const = 0;
};

/// Pulse-level qutrit simulation through lambda-pulse synthesis and the
/// Lindblad integrator. Clifford channels are computed once at construction.
class SimulatedChannels final : public GateChannels {
 public:
  SimulatedChannels(Scheme scheme, double omega0, NoiseModel noise, ErrorInjection err = {},
                    IntegratorConfig integrator = {}, int threads = 1);

  int dim() const override { return level::kQutritDim; }
  const Channel& clifford(int index) const override;
  Channel gate(const Eigen::Matrix2cd& ideal) const override;
  Channel idle_like(const GateSpec& spec) const override;

  Scheme scheme() const { return scheme_; }
  double omega0() const { return omega0_; }

 private:
  Channel simulate(const std::optional<GateSpec>& spec) const;

  Scheme scheme_;
  double omega0_;
  NoiseModel noise_;
  ErrorInjection err_;
  IntegratorConfig integrator_;
  std::vector<Channel> cliffords_;
};

/// Analytic test channel: rho -> lambda U rho U^dag + (1 - lambda) Tr(rho) I/2.
class DepolarizingChannels final : public GateChannels {
 public:
  explicit DepolarizingChannels(double lambda);

  int dim() const override { return 2; }
  const Channel& clifford(int index) const override;
  Channel gate(const Eigen::Matrix2cd& ideal) const override;
  Channel idle_like(const GateSpec& spec) const override;

 private:
  double lambda_;
  std::vector<Channel> cliffords_;
};

enum class RBMode {
  Standard,      // m random Cliffords + recovery
  Interleaved,   // target after every random Clifford
  RepeatedGate,  // target applied m times + recovery
};

std::string_view to_string(RBMode mode);
RBMode parse_rb_mode(std::string_view name);

struct RBConfig {
  std::vector<int> sequence_lengths;
  int sequences_per_length = 20;
  std::uint64_t seed = 0;
  RBMode mode = RBMode::Standard;
  std::optional<GateSpec> target;
  /// Interleave an identity lasting the target's duration instead of the target.
  bool target_as_idle = false;
  /// 0 records exact probabilities; otherwise binomial sampling with this many shots.
  int shots = 0;
  int threads = 1;

  void validate() const;
};

struct SurvivalPoint {
  int m = 0;
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<double> samples;  // one per sequence, in sequence order
};

struct RBResult {
  std::vector<SurvivalPoint> survival;
  DecayFit fit;
};

/// Seeds the stream for one sequence from (master seed, length index,
/// sequence index), so results do not depend on evaluation order.
std::uint64_t sequence_seed(std::uint64_t master, std::size_t length_index,
                            std::size_t sequence_index);

/// Runs the benchmark. Simulation errors propagate as exceptions; fit
/// problems are reported through RBResult::fit.status.
RBResult rb_run(const RBConfig& config, const GateChannels& channels);

struct InterleavedEstimate {
  double error = 0.0;
  double fidelity = 1.0;
  /// p_int > p_ref or p_ref > 1: outside the physical regime, value not clamped.
  bool out_of_range = false;
};

/// r = (1 - p_int / p_ref) (d - 1) / d.
InterleavedEstimate interleaved_gate_error(double p_ref, double p_int, int d = 2);

}  // namespace holo
