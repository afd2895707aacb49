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
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "holonomy/lambda_pulse.hpp"

namespace holo {

/// U = e^{i global_phase} exp(-i (gamma/2) n.sigma).
struct AxisAngle {
  Eigen::Vector3d n{0.0, 0.0, 1.0};
  double gamma = 0.0;
  double global_phase = 0.0;
};

/// [[c - i s cos(t), -i s sin(t) e^{i p}], [-i s sin(t) e^{-i p}, c + i s cos(t)]]
/// with c = cos(gamma/2), s = sin(gamma/2). This is exp(-i (gamma/2) n.sigma)
/// for n = (sin t cos p, -sin t sin p, cos t).
Eigen::Matrix2cd ideal_single_qubit(const GateSpec& spec);

/// Rotation axis of a GateSpec (see ideal_single_qubit for the azimuth sign).
Eigen::Vector3d rotation_axis(const GateSpec& spec);

/// diag(1, e^{2 pi i / 2^k}, 1, 1) on {|00>, |01>, |10>, |11>}.
Eigen::Matrix4cd ideal_control_rk(int k);

/// Canonical axis-angle form with gamma in [0, pi]; at gamma = pi the first
/// non-zero axis component is positive. The identity maps to
/// gamma = 0 with n = (0, 0, 1).
AxisAngle axis_angle_decompose(const Eigen::Matrix2cd& u);
Eigen::Matrix2cd axis_angle_compose(const AxisAngle& aa);

/// GateSpec realizing the rotation, or nullopt for the identity.
std::optional<GateSpec> to_gate_spec(const AxisAngle& aa);

inline constexpr int kCliffordCount = 24;

struct CliffordEntry {
  std::string_view name;
  Eigen::Vector3d axis;
  double angle;
  Eigen::Matrix2cd matrix;
};

/// The 24 single-qubit Cliffords in the canonical order of docs/cliffords.md:
/// identity, the three Pauli pi rotations, the six +-pi/2 Pauli rotations, the
/// six pi rotations about face diagonals and the eight 2pi/3 rotations about
/// cube diagonals.
const std::array<CliffordEntry, kCliffordCount>& clifford_group();

/// Index of the Clifford equal to u up to global phase, if any.
std::optional<int> clifford_index(const Eigen::Matrix2cd& u, double tol = 1e-9);

/// Index of c_a * c_b (c_b applied first).
int clifford_product(int a, int b);
int clifford_inverse(int index);

/// One holonomic loop per Clifford; the identity is a no-op (nullopt).
std::optional<GateSpec> compile_clifford(int index);

}  // namespace holo
