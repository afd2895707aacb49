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

#include "holonomy/lambda_pulse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace holo {

namespace {

constexpr double kGammaEdge = 1e-9;
constexpr double kTimeSlack = 1e-12;  // relative

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::Tounhqc ? "tounhqc" : "nhqc";
}

Scheme parse_scheme(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "tounhqc") return Scheme::Tounhqc;
  if (lower == "nhqc") return Scheme::Nhqc;
  throw InvalidArgument("unknown scheme '" + std::string(name) +
                        "' (expected tounhqc or nhqc)");
}

GateSpec::GateSpec(double theta, double phi, double gamma)
    : theta_(theta), phi_(wrap_angle(phi)), gamma_(gamma) {
  if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(gamma)) {
    throw InvalidArgument("gate parameters must be finite");
  }
  if (theta < -1e-12 || theta > kPi + 1e-12) {
    throw InvalidArgument("theta must lie in [0, pi]");
  }
  theta_ = std::clamp(theta, 0.0, kPi);
  if (std::abs(gamma) < kGammaEdge || std::abs(gamma - kTwoPi) < kGammaEdge) {
    throw DegenerateLoop("gamma = " + std::to_string(gamma) +
                         " is a degenerate loop: no rotation to perform");
  }
  if (gamma <= 0.0 || gamma >= kTwoPi) {
    throw InvalidArgument("gamma must lie in (0, 2 pi)");
  }
}

BrightDark bright_dark_basis(double theta, double phi) {
  const double s = std::sin(theta / 2.0);
  const double c = std::cos(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  Ket b = Ket::Zero(level::kQutritDim);
  Ket d = Ket::Zero(level::kQutritDim);
  b(level::kZero) = s * e;
  b(level::kOne) = c;
  d(level::kZero) = c * e;
  d(level::kOne) = -s;
  return {trusted_state(std::move(b)), trusted_state(std::move(d))};
}

DriveAxis drive_axis(const GateSpec& spec) {
  return {kPi - spec.theta(), spec.phi()};
}

PulseSchedule::PulseSchedule(double omega0, std::vector<PulseSegment> segments,
                             double edge_ramp)
    : omega0_(omega0), segments_(std::move(segments)), edge_ramp_(edge_ramp) {
  if (segments_.empty()) throw InvalidArgument("schedule needs at least one segment");
  if (!(omega0_ >= 0.0)) throw InvalidArgument("omega0 must be non-negative");
  double t = 0.0;
  for (const auto& seg : segments_) {
    if (std::abs(seg.t_start - t) > kTimeSlack * std::abs(seg.t_end)) {
      throw InvalidArgument("schedule segments must be contiguous from t = 0");
    }
    if (!(seg.t_end > seg.t_start)) throw InvalidArgument("segment has non-positive length");
    if (!(seg.omega >= 0.0)) throw InvalidArgument("drive amplitude must be non-negative");
    t = seg.t_end;
  }
  if (!(edge_ramp_ >= 0.0) || 2.0 * edge_ramp_ > duration()) {
    throw InvalidArgument("edge ramp must be in [0, duration / 2]");
  }
}

PulseSchedule PulseSchedule::idle(double duration) {
  if (!(duration > 0.0)) throw InvalidArgument("idle duration must be positive");
  PulseSegment seg;
  seg.t_end = duration;
  return PulseSchedule(0.0, {seg});
}

const PulseSegment& PulseSchedule::segment_at(double t) const {
  if (!(t >= 0.0 && t <= duration() * (1.0 + kTimeSlack))) {
    throw InvalidArgument("time lies outside the schedule");
  }
  for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
    if (t < segments_[k].t_end) return segments_[k];
  }
  return segments_.back();
}

double PulseSchedule::omega(double t) const {
  double envelope = segment_at(t).omega;
  if (edge_ramp_ > 0.0) {
    const double tau = duration();
    if (t < edge_ramp_) {
      envelope *= 0.5 * (1.0 - std::cos(kPi * std::max(t, 0.0) / edge_ramp_));
    } else if (t > tau - edge_ramp_) {
      envelope *= 0.5 * (1.0 - std::cos(kPi * std::max(tau - t, 0.0) / edge_ramp_));
    }
  }
  return envelope;
}

DriveSample PulseSchedule::drive(double t) const {
  const PulseSegment& seg = segment_at(t);
  const double om = omega(t);
  DriveSample s;
  s.t = t;
  s.omega_0e = om * std::sin(seg.theta_mix / 2.0);
  s.omega_1e = om * std::cos(seg.theta_mix / 2.0);
  s.phi1 = seg.phi1(t);
  s.phi0 = s.phi1 + seg.phi0_offset;
  return s;
}

std::vector<double> PulseSchedule::breakpoints() const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < segments_.size(); ++k) out.push_back(segments_[k].t_end);
  return out;
}

PulseSchedule PulseSchedule::with_edge_ramp(double ramp) const {
  return PulseSchedule(omega0_, segments_, ramp);
}

double tounhqc_duration(double gamma, double omega0) {
  if (!(omega0 > 0.0)) throw InvalidArgument("omega0 must be positive");
  if (!(gamma > kTolerance && gamma < kTwoPi - kTolerance)) {
    throw DegenerateLoop("gamma must lie in (0, 2 pi)");
  }
  const double detour = kPi - gamma;
  return 2.0 * std::sqrt(kPi * kPi - detour * detour) / omega0;
}

double nhqc_duration(double omega0) {
  if (!(omega0 > 0.0)) throw InvalidArgument("omega0 must be positive");
  return kTwoPi / omega0;
}

PulseSchedule synthesize_tounhqc(const GateSpec& spec, double omega0) {
  const double tau = tounhqc_duration(spec.gamma(), omega0);
  const DriveAxis axis = drive_axis(spec);
  PulseSegment seg;
  seg.t_end = tau;
  seg.omega = omega0;
  seg.phi1_slope = 2.0 * (kPi - spec.gamma()) / tau;
  seg.theta_mix = axis.theta_mix;
  seg.phi0_offset = axis.phi0_offset;
  return PulseSchedule(omega0, {seg});
}

PulseSchedule synthesize_nhqc(const GateSpec& spec, double omega0) {
  const double half = nhqc_duration(omega0) / 2.0;
  const DriveAxis axis = drive_axis(spec);
  PulseSegment first;
  first.t_end = half;
  first.omega = omega0;
  first.theta_mix = axis.theta_mix;
  first.phi0_offset = axis.phi0_offset;
  PulseSegment second = first;
  second.t_start = half;
  second.t_end = 2.0 * half;
  second.phi1_start = kPi - spec.gamma();
  return PulseSchedule(omega0, {first, second});
}

PulseSchedule synthesize(Scheme scheme, const GateSpec& spec, double omega0) {
  return scheme == Scheme::Tounhqc ? synthesize_tounhqc(spec, omega0)
                                   : synthesize_nhqc(spec, omega0);
}

double LoopParams::amplitude_residual(double /*t*/) const {
  return omega0 * std::cos(chi) + alpha_rate * std::sin(chi);
}

double LoopParams::phase_residual(double /*t*/) const {
  return alpha_rate + 2.0 * eta_rate * std::cos(chi);
}

LoopParams loop_params(const GateSpec& spec, double omega0) {
  LoopParams loop;
  loop.omega0 = omega0;
  loop.duration = tounhqc_duration(spec.gamma(), omega0);
  loop.chi = std::acos(std::clamp(-(kPi - spec.gamma()) / kPi, -1.0, 1.0));
  loop.eta_rate = kPi / loop.duration;
  loop.alpha_rate = 2.0 * (kPi - spec.gamma()) / loop.duration;
  return loop;
}

double geometric_phase(const LoopParams& loop, int intervals) {
  const int n = std::max(2, intervals + (intervals % 2));
  const double h = loop.duration / n;
  const double s2chi = std::pow(std::sin(loop.chi), 2);
  auto integrand = [&](double t) {
    return std::pow(std::sin(loop.eta(t)), 2) * s2chi * loop.alpha_rate;
  };
  double acc = integrand(0.0) + integrand(loop.duration);
  for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * integrand(k * h);
  return acc * h / 3.0;
}

std::vector<DriveSample> sample_schedule(const PulseSchedule& schedule, double dt) {
  const double tau = schedule.duration();
  if (!(dt > 0.0)) throw InvalidArgument("sample spacing must be positive");
  if (dt > tau) throw InvalidArgument("sample spacing exceeds schedule duration");
  const auto n = static_cast<std::size_t>(std::ceil(tau / dt - 1e-9));
  std::vector<DriveSample> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    out.push_back(schedule.drive(tau * double(k) / double(n)));
  }
  return out;
}

}  // namespace holo
