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

#include "holonomy/gates.hpp"

#include <cmath>
#include <algorithm>

namespace holo {

namespace {

Eigen::Matrix2cd rotation(const Eigen::Vector3d& n, double angle) {
  const Eigen::Matrix2cd ns = n.x() * pauli::x() + n.y() * pauli::y() + n.z() * pauli::z();
  return std::cos(angle / 2.0) * pauli::identity() -
         Complex(0.0, std::sin(angle / 2.0)) * ns;
}

std::array<CliffordEntry, kCliffordCount> build_cliffords() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  const double h = kPi / 2.0;
  const double third = 2.0 * kPi / 3.0;
  struct Row {
    std::string_view name;
    Eigen::Vector3d axis;
    double angle;
  };
  const Row rows[kCliffordCount] = {
      {"I", {0, 0, 1}, 0.0},
      {"X", {1, 0, 0}, kPi},
      {"Y", {0, 1, 0}, kPi},
      {"Z", {0, 0, 1}, kPi},
      {"X/2", {1, 0, 0}, h},
      {"-X/2", {-1, 0, 0}, h},
      {"Y/2", {0, 1, 0}, h},
      {"-Y/2", {0, -1, 0}, h},
      {"Z/2", {0, 0, 1}, h},
      {"-Z/2", {0, 0, -1}, h},
      {"H_xy", {r2, r2, 0}, kPi},
      {"H_x-y", {r2, -r2, 0}, kPi},
      {"H_xz", {r2, 0, r2}, kPi},
      {"H_x-z", {r2, 0, -r2}, kPi},
      {"H_yz", {0, r2, r2}, kPi},
      {"H_y-z", {0, r2, -r2}, kPi},
      {"C3_+++", {r3, r3, r3}, third},
      {"C3_++-", {r3, r3, -r3}, third},
      {"C3_+-+", {r3, -r3, r3}, third},
      {"C3_+--", {r3, -r3, -r3}, third},
      {"C3_-++", {-r3, r3, r3}, third},
      {"C3_-+-", {-r3, r3, -r3}, third},
      {"C3_--+", {-r3, -r3, r3}, third},
      {"C3_---", {-r3, -r3, -r3}, third},
  };
  std::array<CliffordEntry, kCliffordCount> out;
  for (int k = 0; k < kCliffordCount; ++k) {
    out[k] = {rows[k].name, rows[k].axis, rows[k].angle, rotation(rows[k].axis, rows[k].angle)};
  }
  return out;
}

struct CliffordTables {
  std::array<std::array<int, kCliffordCount>, kCliffordCount> product{};
  std::array<int, kCliffordCount> inverse{};
};

const CliffordTables& tables() {
  static const CliffordTables t = [] {
    CliffordTables out;
    const auto& group = clifford_group();
    for (int a = 0; a < kCliffordCount; ++a) {
      for (int b = 0; b < kCliffordCount; ++b) {
        const auto idx = clifford_index(group[a].matrix * group[b].matrix);
        if (!idx) throw std::logic_error("Clifford table is not closed");
        out.product[a][b] = *idx;
        if (*idx == 0) out.inverse[a] = b;
      }
    }
    return out;
  }();
  return t;
}

}  // namespace

Eigen::Matrix2cd ideal_single_qubit(const GateSpec& spec) {
  const double c = std::cos(spec.gamma() / 2.0);
  const double s = std::sin(spec.gamma() / 2.0);
  const double ct = std::cos(spec.theta());
  const double st = std::sin(spec.theta());
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd u;
  u << c - i * s * ct, -i * s * st * std::polar(1.0, spec.phi()),
      -i * s * st * std::polar(1.0, -spec.phi()), c + i * s * ct;
  return u;
}

Eigen::Vector3d rotation_axis(const GateSpec& spec) {
  return {std::sin(spec.theta()) * std::cos(spec.phi()),
          -std::sin(spec.theta()) * std::sin(spec.phi()), std::cos(spec.theta())};
}

Eigen::Matrix4cd ideal_control_rk(int k) {
  if (k < 1) throw InvalidArgument("control-R_k requires k >= 1");
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  u(1, 1) = std::polar(1.0, kTwoPi / std::ldexp(1.0, k));
  return u;
}

AxisAngle axis_angle_decompose(const Eigen::Matrix2cd& u) {
  if (!is_unitary(u)) throw InvalidArgument("axis_angle_decompose: input is not unitary");
  Eigen::Matrix2cd v = u / std::sqrt(u.determinant());
  double a0 = 0.5 * v.trace().real();
  if (a0 < 0.0) {
    v = -v;
    a0 = -a0;
  }
  const Complex i(0.0, 1.0);
  Eigen::Vector3d a{(0.5 * i * (v * pauli::x()).trace()).real(),
                    (0.5 * i * (v * pauli::y()).trace()).real(),
                    (0.5 * i * (v * pauli::z()).trace()).real()};
  AxisAngle out;
  const double norm = a.norm();
  if (norm < 1e-12) {
    out.n = {0.0, 0.0, 1.0};
    out.gamma = 0.0;
  } else {
    out.n = a / norm;
    out.gamma = 2.0 * std::atan2(norm, a0);
    // At gamma = pi the axes n and -n coincide; keep the first non-zero component positive.
    if (a0 < 1e-12) {
      for (int k = 0; k < 3; ++k) {
        if (std::abs(out.n(k)) > 1e-12) {
          if (out.n(k) < 0.0) out.n = -out.n;
          break;
        }
      }
    }
  }
  out.global_phase = std::arg((rotation(out.n, out.gamma).adjoint() * u).trace());
  return out;
}

Eigen::Matrix2cd axis_angle_compose(const AxisAngle& aa) {
  return std::polar(1.0, aa.global_phase) * rotation(aa.n, aa.gamma);
}

std::optional<GateSpec> to_gate_spec(const AxisAngle& aa) {
  if (aa.gamma < 1e-9) return std::nullopt;
  const double theta = std::acos(std::clamp(aa.n.z(), -1.0, 1.0));
  const double phi = std::sin(theta) < 1e-12 ? 0.0 : std::atan2(-aa.n.y(), aa.n.x());
  return GateSpec(theta, phi, aa.gamma);
}

const std::array<CliffordEntry, kCliffordCount>& clifford_group() {
  static const auto group = build_cliffords();
  return group;
}

std::optional<int> clifford_index(const Eigen::Matrix2cd& u, double tol) {
  const auto& group = clifford_group();
  for (int k = 0; k < kCliffordCount; ++k) {
    if (phase_invariant_distance(group[k].matrix, u) < tol) return k;
  }
  return std::nullopt;
}

int clifford_product(int a, int b) {
  if (a < 0 || b < 0 || a >= kCliffordCount || b >= kCliffordCount) {
    throw InvalidArgument("Clifford index out of range");
  }
  return tables().product[a][b];
}

int clifford_inverse(int index) {
  if (index < 0 || index >= kCliffordCount) throw InvalidArgument("Clifford index out of range");
  return tables().inverse[index];
}

std::optional<GateSpec> compile_clifford(int index) {
  if (index < 0 || index >= kCliffordCount) throw InvalidArgument("Clifford index out of range");
  return to_gate_spec(axis_angle_decompose(clifford_group()[index].matrix));
}

}  // namespace holo
