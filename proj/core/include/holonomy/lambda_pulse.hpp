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

#include <string_view>
#include <vector>

#include "holonomy/quantum.hpp"

namespace holo {

/// Qutrit level indices. The computational pair comes first so that the
/// {|0>,|1>} block is the leading 2x2 block of every qutrit operator.
namespace level {
inline constexpr int kZero = 0;
inline constexpr int kOne = 1;
inline constexpr int kExcited = 2;
inline constexpr int kQutritDim = 3;
}  // namespace level

enum class Scheme { Tounhqc, Nhqc };

std::string_view to_string(Scheme scheme);
/// Accepts "tounhqc" / "nhqc" (case-insensitive).
Scheme parse_scheme(std::string_view name);

/// Raised for a rotation angle with no loop (gamma at 0 or 2 pi).
class DegenerateLoop : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Rotation by gamma about the axis fixed by (theta, phi). The target matrix
/// is ideal_single_qubit() in gates.hpp.
class GateSpec {
 public:
  /// theta in [0, pi], gamma in (0, 2 pi); phi is wrapped into [0, 2 pi).
  GateSpec(double theta, double phi, double gamma);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  double gamma() const { return gamma_; }

 private:
  double theta_;
  double phi_;
  double gamma_;
};

struct BrightDark {
  StateVector bright;
  StateVector dark;
};

/// |b> = sin(t/2) e^{i p}|0> + cos(t/2)|1>, |d> = cos(t/2) e^{i p}|0> - sin(t/2)|1>,
/// embedded in the qutrit with zero |e> amplitude.
BrightDark bright_dark_basis(double theta, double phi);

/// Mixing angle and relative phase of the two drives realizing a GateSpec.
///
/// Both loop families return the drive bright state with phase e^{-i gamma}
/// and leave the dark state untouched. Choosing the bright state as the +1
/// eigenvector of the rotation axis then reproduces ideal_single_qubit():
/// theta_mix = pi - theta, phi0_offset = phi.
struct DriveAxis {
  double theta_mix = 0.0;
  double phi0_offset = 0.0;
};
DriveAxis drive_axis(const GateSpec& spec);

/// One constant-amplitude piece of a schedule. The drive phases are
/// phi1(t) = phi1_start + phi1_slope (t - t_start) and phi0(t) = phi1(t) + phi0_offset.
struct PulseSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  double omega = 0.0;  // rad/s
  double phi1_start = 0.0;
  double phi1_slope = 0.0;  // rad/s
  double theta_mix = 0.0;
  double phi0_offset = 0.0;

  double phi1(double t) const { return phi1_start + phi1_slope * (t - t_start); }
};

struct DriveSample {
  double t = 0.0;
  double omega_0e = 0.0;  // rad/s
  double omega_1e = 0.0;  // rad/s
  double phi0 = 0.0;
  double phi1 = 0.0;
};

class PulseSchedule {
 public:
  /// Segments must be contiguous from t = 0 with non-negative amplitudes.
  /// `omega0` is the nominal drive strength used to scale relative detuning
  /// errors. `edge_ramp` applies cosine rise/fall edges inside [0, duration].
  PulseSchedule(double omega0, std::vector<PulseSegment> segments,
                double edge_ramp = 0.0);

  /// Undriven schedule of the given length.
  static PulseSchedule idle(double duration);

  double duration() const { return segments_.back().t_end; }
  double omega0() const { return omega0_; }
  double edge_ramp() const { return edge_ramp_; }
  const std::vector<PulseSegment>& segments() const { return segments_; }

  /// Segment containing t; boundaries belong to the later segment.
  const PulseSegment& segment_at(double t) const;
  /// Envelope Omega(t) including edge ramps.
  double omega(double t) const;
  DriveSample drive(double t) const;
  /// Interior segment boundaries (where the drive may be discontinuous).
  std::vector<double> breakpoints() const;

  PulseSchedule with_edge_ramp(double ramp) const;

 private:
  double omega0_;
  std::vector<PulseSegment> segments_;
  double edge_ramp_;
};

/// tau = 2 sqrt(pi^2 - (pi - gamma)^2) / omega0.
double tounhqc_duration(double gamma, double omega0);
/// tau = 2 pi / omega0, independent of gamma.
double nhqc_duration(double omega0);

/// Time-optimal loop: constant Omega0 and phi1(t) = 2 (pi - gamma) t / tau.
/// For gamma > pi the slope is negative, i.e. the mirrored loop.
PulseSchedule synthesize_tounhqc(const GateSpec& spec, double omega0);

/// Conventional loop: two pi-area segments with a phase jump of pi - gamma
/// between them.
PulseSchedule synthesize_nhqc(const GateSpec& spec, double omega0);

PulseSchedule synthesize(Scheme scheme, const GateSpec& spec, double omega0);

/// Loop parameterization of the auxiliary state for the time-optimal path:
/// eta(t) = pi t / tau, alpha(t) = 2 (pi - gamma) t / tau and
/// cos(chi) = -(pi - gamma) / pi.
struct LoopParams {
  double chi = 0.0;
  double duration = 0.0;
  double omega0 = 0.0;
  double alpha_rate = 0.0;  // d alpha / dt
  double eta_rate = 0.0;    // d eta / dt

  double alpha(double t) const { return alpha_rate * t; }
  double eta(double t) const { return eta_rate * t; }

  /// Omega cos(chi) + alpha' sin(chi): the amplitude relation multiplied
  /// through by cos(chi) so it stays finite at chi = pi/2.
  double amplitude_residual(double t) const;
  /// alpha' + 2 eta' cos(chi).
  double phase_residual(double t) const;
};

LoopParams loop_params(const GateSpec& spec, double omega0);

/// Composite Simpson quadrature of sin^2(eta) sin^2(chi) d alpha over the loop.
/// `intervals` is rounded up to an even number.
double geometric_phase(const LoopParams& loop, int intervals = 20000);

/// Drive values on the uniform grid t_k = k tau / n, n = ceil(tau / dt), which
/// includes both endpoints. Throws InvalidArgument if dt exceeds the duration.
std::vector<DriveSample> sample_schedule(const PulseSchedule& schedule, double dt);

}  // namespace holo
