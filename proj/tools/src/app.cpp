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

#include "holonomy/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "holonomy/cli/output.hpp"
#include "holonomy/gates.hpp"
#include "holonomy/protocols.hpp"
#include "holonomy/randomized_benchmarking.hpp"
#include "holonomy/two_qubit.hpp"

namespace holo::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kMHz = kTwoPi * 1e6;  // Omega/2pi in MHz -> rad/s
constexpr double kNs = 1e-9;
constexpr double kUs = 1e-6;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Collects every validation problem so they can be reported together.
class Issues {
 public:
  void require(bool ok, const std::string& message) {
    if (!ok) messages_.push_back(message);
  }
  template <typename F>
  void attempt(F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      messages_.push_back(e.what());
    }
  }
  void raise_if_any() const {
    if (messages_.empty()) return;
    std::string text = fmt::format("{} configuration error(s):", messages_.size());
    for (const auto& m : messages_) text += "\n  - " + m;
    throw ConfigError(text);
  }

 private:
  std::vector<std::string> messages_;
};

struct CommonOpts {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int threads = std::max(1, int(std::thread::hardware_concurrency()));
  std::optional<double> dt_ns;
  int steps = 2000;
  int shots = 0;
};

struct ErrorOpts {
  double amp = 0.0;
  double det = 0.0;
  double det_mhz = 0.0;
};

/// Qutrit lifetimes in microseconds; 0 disables a channel.
struct QutritNoiseOpts {
  double t1_e_us = 0.0;
  double t1_1_us = 0.0;
  double tphi_e_us = 0.0;
  double tphi_1_us = 0.0;
};

/// Control-phase model lifetimes in microseconds; 0 disables a channel.
struct CompositeNoiseOpts {
  double t1_us = 0.0;
  double t1_ancilla_us = 0.0;
  double tphi_us = 0.0;
};

struct GateOpts {
  std::string scheme = "tounhqc";
  double theta = kPi / 2.0;
  double phi = 0.0;
  double gamma = kPi / 2.0;
  double omega0_mhz = 8.660;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed, "Master random seed")->capture_default_str();
  cmd->add_option("--out-dir", c.out_dir, "Directory for tables and summaries")
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (default: available cores)");
  cmd->add_option("--dt-ns", c.dt_ns, "Integrator step in ns (default: duration / steps)");
  cmd->add_option("--steps", c.steps, "Integrator steps per schedule when --dt-ns is unset")
      ->capture_default_str();
}

void add_shots(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--shots", c.shots, "Binomial shots per probability (0: exact)")
      ->capture_default_str();
}

void add_errors(CLI::App* cmd, ErrorOpts& e) {
  cmd->add_option("--amp-err", e.amp, "Relative drive amplitude error dA/A")
      ->capture_default_str();
  cmd->add_option("--det-err", e.det, "Relative detuning error (units of the drive strength)")
      ->capture_default_str();
  cmd->add_option("--det-mhz", e.det_mhz, "Absolute detuning of the auxiliary level, MHz")
      ->capture_default_str();
}

void add_qutrit_noise(CLI::App* cmd, QutritNoiseOpts& n) {
  cmd->add_option("--t1-e-us", n.t1_e_us, "T1 of |e> -> |0> in us (0: off)")
      ->capture_default_str();
  cmd->add_option("--t1-1-us", n.t1_1_us, "T1 of |1> -> |e> in us (0: off)")
      ->capture_default_str();
  cmd->add_option("--tphi-e-us", n.tphi_e_us, "Dephasing time of |e> in us (0: off)")
      ->capture_default_str();
  cmd->add_option("--tphi-1-us", n.tphi_1_us, "Dephasing time of |1> in us (0: off)")
      ->capture_default_str();
}

void add_composite_noise(CLI::App* cmd, CompositeNoiseOpts& n) {
  cmd->add_option("--t1-us", n.t1_us, "T1 of control and target qubits in us (0: off)")
      ->capture_default_str();
  cmd->add_option("--t1-ancilla-us", n.t1_ancilla_us, "T1 of the ancilla in us (0: off)")
      ->capture_default_str();
  cmd->add_option("--tphi-us", n.tphi_us, "Dephasing time of every transmon in us (0: off)")
      ->capture_default_str();
}

void add_gate(CLI::App* cmd, GateOpts& g, bool with_axis) {
  cmd->add_option("--scheme", g.scheme, "Loop schedule: tounhqc or nhqc")->capture_default_str();
  if (with_axis) {
    cmd->add_option("--theta", g.theta, "Rotation axis polar angle, rad")->capture_default_str();
    cmd->add_option("--phi", g.phi, "Rotation axis azimuth, rad")->capture_default_str();
  }
  cmd->add_option("--gamma", g.gamma, "Rotation angle, rad")->capture_default_str();
  cmd->add_option("--omega0-mhz", g.omega0_mhz, "Peak drive strength Omega0/2pi, MHz")
      ->capture_default_str();
}

void check_common(Issues& issues, const CommonOpts& c) {
  issues.require(c.threads >= 1, "--threads must be >= 1");
  issues.require(c.steps >= 100, "--steps must be >= 100");
  issues.require(c.shots >= 0, "--shots must be >= 0");
  if (c.dt_ns) issues.require(*c.dt_ns > 0.0, "--dt-ns must be positive");
}

void check_lifetime(Issues& issues, double value, const char* flag) {
  issues.require(std::isfinite(value) && value >= 0.0,
                 fmt::format("{} must be a non-negative number of microseconds", flag));
}

IntegratorConfig integrator_of(const CommonOpts& c) {
  IntegratorConfig ic;
  ic.steps = c.steps;
  if (c.dt_ns) ic.dt = *c.dt_ns * kNs;
  return ic;
}

ErrorInjection errors_of(Issues& issues, const ErrorOpts& e) {
  ErrorInjection err;
  err.amp_fraction = e.amp;
  err.detuning_fraction = e.det;
  err.detuning_abs = e.det_mhz * kMHz;
  issues.attempt([&] { err.validate(); });
  return err;
}

NoiseModel qutrit_noise_of(Issues& issues, const QutritNoiseOpts& n) {
  check_lifetime(issues, n.t1_e_us, "--t1-e-us");
  check_lifetime(issues, n.t1_1_us, "--t1-1-us");
  check_lifetime(issues, n.tphi_e_us, "--tphi-e-us");
  check_lifetime(issues, n.tphi_1_us, "--tphi-1-us");
  TransmonRates rates;
  rates.t1_excited = n.t1_e_us * kUs;
  rates.t1_one = n.t1_1_us * kUs;
  rates.tphi_excited = n.tphi_e_us * kUs;
  rates.tphi_one = n.tphi_1_us * kUs;
  NoiseModel noise;
  issues.attempt([&] { noise = transmon_noise(rates); });
  return noise;
}

NoiseModel composite_noise_of(Issues& issues, const CompositeNoiseOpts& n) {
  check_lifetime(issues, n.t1_us, "--t1-us");
  check_lifetime(issues, n.t1_ancilla_us, "--t1-ancilla-us");
  check_lifetime(issues, n.tphi_us, "--tphi-us");
  TwoQubitRates rates;
  rates.t1_control = rates.t1_target = n.t1_us * kUs;
  rates.t1_ancilla = n.t1_ancilla_us * kUs;
  rates.tphi_control = rates.tphi_target = rates.tphi_ancilla = n.tphi_us * kUs;
  NoiseModel noise;
  issues.attempt([&] { noise = composite_noise(rates); });
  return noise;
}

std::optional<Scheme> scheme_of(Issues& issues, const std::string& name) {
  std::optional<Scheme> s;
  issues.attempt([&] { s = parse_scheme(name); });
  return s;
}

std::optional<GateSpec> spec_of(Issues& issues, double theta, double phi, double gamma) {
  std::optional<GateSpec> spec;
  issues.attempt([&] { spec = GateSpec(theta, phi, gamma); });
  return spec;
}

/// Dry-runs the step grid so step-size problems surface during validation.
void check_grid(Issues& issues, const PulseSchedule& schedule, const IntegratorConfig& ic,
                const NoiseModel& noise) {
  issues.attempt([&] {
    const auto grid = build_time_grid(schedule.duration(), schedule.breakpoints(), ic);
    double dt_max = 0.0;
    for (const auto& s : grid) dt_max = std::max(dt_max, s.dt);
    if (noise.max_rate() * dt_max >= 0.01) {
      throw InvalidArgument(fmt::format("step {:.3g} ns too coarse for the noise rates",
                                        dt_max / kNs));
    }
  });
}

json noise_params(const QutritNoiseOpts& n) {
  return {{"t1_e_us", n.t1_e_us},
          {"t1_1_us", n.t1_1_us},
          {"tphi_e_us", n.tphi_e_us},
          {"tphi_1_us", n.tphi_1_us}};
}

json noise_params(const CompositeNoiseOpts& n) {
  return {{"t1_us", n.t1_us}, {"t1_ancilla_us", n.t1_ancilla_us}, {"tphi_us", n.tphi_us}};
}

json error_params(const ErrorOpts& e) {
  return {{"amp_err", e.amp}, {"det_err", e.det}, {"det_mhz", e.det_mhz}};
}

json integrator_params(const CommonOpts& c) {
  return {{"steps", c.steps}, {"dt_ns", c.dt_ns ? json(*c.dt_ns) : json(nullptr)}};
}

json matrix_json(const Operator& m) {
  json re = json::array();
  json im = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ir = json::array();
    for (long j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ir.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"re", re}, {"im", im}};
}

json fit_json(const DecayFit& fit) {
  return {{"A", fit.a},         {"p", fit.p},         {"B", fit.b},
          {"A_err", fit.a_err}, {"p_err", fit.p_err}, {"B_err", fit.b_err},
          {"iterations", fit.iterations}, {"status", std::string(to_string(fit.status))}};
}

fs::path prepare_out_dir(const CommonOpts& c) {
  const fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("cannot create output directory '" + c.out_dir + "'");
  }
  return dir;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericFailure(fmt::format("{} is not finite", what));
}

double sample_probability(double p, int shots, std::uint64_t seed) {
  if (shots <= 0) return p;
  std::mt19937_64 rng(seed);
  std::binomial_distribution<int> dist(shots, std::clamp(p, 0.0, 1.0));
  return double(dist(rng)) / double(shots);
}

// ---------------------------------------------------------------- gate

struct GateCommand {
  CommonOpts common;
  GateOpts gate;
  ErrorOpts errors;
  QutritNoiseOpts noise;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("gate", "Synthesize and simulate one single-qubit gate");
    add_gate(cmd, gate, true);
    add_errors(cmd, errors);
    add_qutrit_noise(cmd, noise);
    add_common(cmd, common);
    cmd->callback([this, &action, &out] { action = [this, &out] { run(out); }; });
  }

  void run(std::ostream& out) const {
    Issues issues;
    check_common(issues, common);
    const auto scheme = scheme_of(issues, gate.scheme);
    const auto spec = spec_of(issues, gate.theta, gate.phi, gate.gamma);
    issues.require(gate.omega0_mhz > 0.0, "--omega0-mhz must be positive");
    const ErrorInjection err = errors_of(issues, errors);
    const NoiseModel noise_model = qutrit_noise_of(issues, noise);
    const IntegratorConfig ic = integrator_of(common);
    std::optional<PulseSchedule> schedule;
    if (scheme && spec && gate.omega0_mhz > 0.0) {
      schedule = synthesize(*scheme, *spec, gate.omega0_mhz * kMHz);
      check_grid(issues, *schedule, ic, noise_model);
    }
    issues.raise_if_any();

    const json params = {{"scheme", gate.scheme},       {"theta", gate.theta},
                         {"phi", gate.phi},             {"gamma", gate.gamma},
                         {"omega0_mhz", gate.omega0_mhz}, {"errors", error_params(errors)},
                         {"noise", noise_params(noise)}, {"integrator", integrator_params(common)}};
    const RunMeta meta = RunMeta::make("gate", common.seed, params);
    const fs::path dir = prepare_out_dir(common);

    const Operator ideal = ideal_single_qubit(*spec);
    json results = {{"duration_ns", schedule->duration() / kNs}, {"ideal", matrix_json(ideal)}};
    double fidelity = 0.0;
    double leakage = 0.0;
    if (noise_model.empty()) {
      const Operator u = propagator(*schedule, err, ic);
      fidelity = average_gate_fidelity(ideal, u.topLeftCorner(2, 2));
      leakage = unitary_leakage(u, 2);
      results["propagator"] = matrix_json(u);
      results["phase_invariant_distance"] = phase_invariant_distance(u.topLeftCorner(2, 2), ideal);
    } else {
      const Channel channel = evolve_channel(lambda_system(*schedule, err), noise_model, ic);
      fidelity = channel_average_fidelity(channel, ideal);
      leakage = channel_leakage(channel, 2);
    }
    require_finite(fidelity, "gate fidelity");
    results["fidelity"] = fidelity;
    results["infidelity"] = 1.0 - fidelity;
    results["leakage"] = leakage;

    const double dt = schedule->duration() / 400.0;
    CsvTable pulse({"t_ns", "omega_0e_mhz", "omega_1e_mhz", "phi0_rad", "phi1_rad"});
    for (const auto& s : sample_schedule(*schedule, dt)) {
      pulse.add_row(std::vector<double>{s.t / kNs, s.omega_0e / kMHz, s.omega_1e / kMHz, s.phi0,
                                        s.phi1});
    }
    pulse.write(dir / "gate_pulse.csv", meta);
    write_summary(dir / "gate_summary.json", meta, params, results);
    out << fmt::format("gate: scheme={} duration_ns={} fidelity={} leakage={}\n", gate.scheme,
                       format_double(schedule->duration() / kNs), format_double(fidelity),
                       format_double(leakage));
  }
};

// ---------------------------------------------------------------- trajectory

struct TrajectoryCommand {
  CommonOpts common;
  GateOpts gate;
  ErrorOpts errors;
  QutritNoiseOpts noise;
  CompositeNoiseOpts composite;
  std::string model = "qutrit";
  std::string initial;
  double g_mhz = 5.0;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("trajectory", "Population and Bloch time series of one gate");
    add_gate(cmd, gate, true);
    cmd->add_option("--model", model, "qutrit (single-qubit gate) or cphase (control-phase gate)")
        ->capture_default_str();
    cmd->add_option("--initial", initial,
                    "Initial state: 0, 1, e, bright, dark (qutrit); 00, 01, 10, 11 (cphase)");
    cmd->add_option("--g-mhz", g_mhz, "Coupling strength g/2pi of the cphase model, MHz")
        ->capture_default_str();
    add_errors(cmd, errors);
    add_qutrit_noise(cmd, noise);
    add_composite_noise(cmd, composite);
    add_common(cmd, common);
    cmd->callback([this, &action, &out] { action = [this, &out] { run(out); }; });
  }

  void run(std::ostream& out) const {
    Issues issues;
    check_common(issues, common);
    issues.require(model == "qutrit" || model == "cphase", "--model must be qutrit or cphase");
    const auto scheme = scheme_of(issues, gate.scheme);
    const ErrorInjection err = errors_of(issues, errors);
    const IntegratorConfig ic = integrator_of(common);
    const bool qutrit = model != "cphase";
    const std::string init = initial.empty() ? (qutrit ? "0" : "01") : initial;

    std::optional<GateSpec> spec;
    std::optional<PulseSchedule> schedule;
    std::optional<StateVector> psi0;
    NoiseModel noise_model;
    if (qutrit) {
      spec = spec_of(issues, gate.theta, gate.phi, gate.gamma);
      issues.require(gate.omega0_mhz > 0.0, "--omega0-mhz must be positive");
      noise_model = qutrit_noise_of(issues, noise);
      if (scheme && spec && gate.omega0_mhz > 0.0) {
        schedule = synthesize(*scheme, *spec, gate.omega0_mhz * kMHz);
        const DriveAxis axis = drive_axis(*spec);
        const BrightDark bd = bright_dark_basis(axis.theta_mix, axis.phi0_offset);
        if (init == "0" || init == "1" || init == "e") {
          psi0 = StateVector::basis(level::kQutritDim, init == "0"   ? level::kZero
                                                       : init == "1" ? level::kOne
                                                                     : level::kExcited);
        } else if (init == "bright") {
          psi0 = bd.bright;
        } else if (init == "dark") {
          psi0 = bd.dark;
        } else {
          issues.require(false, "--initial must be one of 0, 1, e, bright, dark for --model qutrit");
        }
      }
    } else {
      issues.require(gate.gamma > 0.0 && gate.gamma < kTwoPi, "--gamma must lie in (0, 2 pi)");
      issues.require(g_mhz > 0.0, "--g-mhz must be positive");
      noise_model = composite_noise_of(issues, composite);
      const std::vector<std::string> labels = {"00", "01", "10", "11"};
      const auto it = std::find(labels.begin(), labels.end(), init);
      if (it == labels.end()) {
        issues.require(false, "--initial must be one of 00, 01, 10, 11 for --model cphase");
      } else {
        psi0 = StateVector::basis(composite::kDim, int(it - labels.begin()));
      }
      if (scheme && g_mhz > 0.0 && gate.gamma > 0.0 && gate.gamma < kTwoPi) {
        issues.attempt([&] { schedule = build_cphase_schedule(gate.gamma, g_mhz * kMHz, *scheme); });
      }
    }
    if (schedule) check_grid(issues, *schedule, ic, noise_model);
    issues.raise_if_any();

    json params = {{"model", model},
                   {"scheme", gate.scheme},
                   {"gamma", gate.gamma},
                   {"initial", init},
                   {"errors", error_params(errors)},
                   {"integrator", integrator_params(common)}};
    if (qutrit) {
      params["theta"] = gate.theta;
      params["phi"] = gate.phi;
      params["omega0_mhz"] = gate.omega0_mhz;
      params["noise"] = noise_params(noise);
    } else {
      params["g_mhz"] = g_mhz;
      params["noise"] = noise_params(composite);
    }
    const RunMeta meta = RunMeta::make("trajectory", common.seed, params);
    const fs::path dir = prepare_out_dir(common);

    json results = {{"duration_ns", schedule->duration() / kNs}};
    if (qutrit) {
      const TrajectoryReport report = trajectory_report(*schedule, *psi0, noise_model, err, ic);
      CsvTable pops({"t_ns", "p0", "p1", "pe"});
      for (const auto& r : report.populations) {
        pops.add_row(std::vector<double>{r.t / kNs, r.p0, r.p1, r.pe});
      }
      CsvTable bloch({"t_ns", "x", "y", "z", "population"});
      for (const auto& b : report.bloch) {
        bloch.add_row(std::vector<double>{b.t / kNs, b.x, b.y, b.z, b.population});
      }
      pops.write(dir / "trajectory_populations.csv", meta);
      bloch.write(dir / "trajectory_bloch.csv", meta);
      const auto& endp = report.populations.back();
      const auto& endb = report.bloch.back();
      require_finite(endp.p0 + endp.p1 + endp.pe, "final populations");
      results["final_populations"] = {endp.p0, endp.p1, endp.pe};
      results["final_bloch"] = {endb.x, endb.y, endb.z};
      out << fmt::format("trajectory: P0={} P1={} Pe={}\n", format_double(endp.p0),
                         format_double(endp.p1), format_double(endp.pe));
    } else {
      const auto frames = population_trace(*schedule, *psi0, noise_model, err, ic);
      CsvTable pops({"t_ns", "p00", "p01", "p10", "p11", "pa"});
      for (const auto& f : frames) {
        pops.add_row(std::vector<double>{f.t / kNs, f.p[0], f.p[1], f.p[2], f.p[3], f.p[4]});
      }
      pops.write(dir / "trajectory_populations.csv", meta);
      const auto& endp = frames.back().p;
      require_finite(endp[0] + endp[1] + endp[2] + endp[3] + endp[4], "final populations");
      results["final_populations"] = endp;
      out << fmt::format("trajectory: P01={} Pa={}\n", format_double(endp[1]),
                         format_double(endp[4]));
    }
    write_summary(dir / "trajectory_summary.json", meta, params, results);
  }
};

// ---------------------------------------------------------------- ramsey

struct RamseyCommand {
  CommonOpts common;
  GateOpts gate{"tounhqc", 0.0, 0.0, kPi / 4.0, 8.660};
  ErrorOpts errors;
  CompositeNoiseOpts noise;
  double g_mhz = 5.0;
  int points = 33;
  std::string analysis = "ideal";

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("ramsey", "Conditional phase of the control-phase gate by Ramsey fringes");
    cmd->add_option("--scheme", gate.scheme, "Loop schedule: tounhqc or nhqc")->capture_default_str();
    cmd->add_option("--gamma", gate.gamma, "Conditional phase, rad")->capture_default_str();
    cmd->add_option("--g-mhz", g_mhz, "Coupling strength g/2pi, MHz")->capture_default_str();
    cmd->add_option("--points", points, "Analysis phases over [0, 2 pi)")->capture_default_str();
    cmd->add_option("--analysis", analysis, "Analysis pulse: ideal or pulsed")->capture_default_str();
    add_errors(cmd, errors);
    add_composite_noise(cmd, noise);
    add_common(cmd, common);
    add_shots(cmd, common);
    cmd->callback([this, &action, &out] { action = [this, &out] { run(out); }; });
  }

  void run(std::ostream& out) const {
    Issues issues;
    check_common(issues, common);
    const auto scheme = scheme_of(issues, gate.scheme);
    issues.require(gate.gamma > 0.0 && gate.gamma < kTwoPi, "--gamma must lie in (0, 2 pi)");
    issues.require(g_mhz > 0.0, "--g-mhz must be positive");
    issues.require(points >= 4, "--points must be >= 4");
    issues.require(analysis == "ideal" || analysis == "pulsed", "--analysis must be ideal or pulsed");
    RamseyConfig config;
    config.err = errors_of(issues, errors);
    config.noise = composite_noise_of(issues, noise);
    config.integrator = integrator_of(common);
    if (scheme && g_mhz > 0.0 && gate.gamma > 0.0 && gate.gamma < kTwoPi) {
      issues.attempt([&] {
        check_grid(issues, build_cphase_schedule(gate.gamma, g_mhz * kMHz, *scheme),
                   config.integrator, config.noise);
      });
    }
    issues.raise_if_any();

    config.scheme = *scheme;
    config.gamma = gate.gamma;
    config.model.g_eff = g_mhz * kMHz;
    config.analysis = analysis == "pulsed" ? AnalysisPulse::Pulsed : AnalysisPulse::Ideal;
    for (int k = 0; k < points; ++k) config.theta_grid.push_back(kTwoPi * k / points);

    const json params = {{"scheme", gate.scheme}, {"gamma", gate.gamma},
                         {"g_mhz", g_mhz},         {"points", points},
                         {"analysis", analysis},   {"shots", common.shots},
                         {"errors", error_params(errors)}, {"noise", noise_params(noise)},
                         {"integrator", integrator_params(common)}};
    const RunMeta meta = RunMeta::make("ramsey", common.seed, params);
    const fs::path dir = prepare_out_dir(common);

    RamseyConfig off = config;
    off.gate_on = false;
    auto on_points = ramsey_protocol(config);
    auto off_points = ramsey_protocol(off);
    for (std::size_t k = 0; k < on_points.size(); ++k) {
      on_points[k].p_excited = sample_probability(on_points[k].p_excited, common.shots,
                                                  sequence_seed(common.seed, 1, k));
      off_points[k].p_excited = sample_probability(off_points[k].p_excited, common.shots,
                                                   sequence_seed(common.seed, 0, k));
    }
    const FringeFit fit_on = fit_fringe(on_points);
    const FringeFit fit_off = fit_fringe(off_points);
    const double shift = std::remainder(fit_on.phase - fit_off.phase, kTwoPi);
    require_finite(shift, "phase shift");

    CsvTable table({"theta_rad", "p1_gate_off", "p1_gate_on"});
    for (std::size_t k = 0; k < on_points.size(); ++k) {
      table.add_row(std::vector<double>{on_points[k].theta, off_points[k].p_excited,
                                        on_points[k].p_excited});
    }
    table.write(dir / "ramsey.csv", meta);
    auto fringe = [](const FringeFit& f) {
      return json{{"offset", f.offset}, {"amplitude", f.amplitude}, {"phase", f.phase}};
    };
    const json results = {{"phase_shift_rad", shift},
                          {"fit_gate_on", fringe(fit_on)},
                          {"fit_gate_off", fringe(fit_off)}};
    write_summary(dir / "ramsey_summary.json", meta, params, results);
    out << fmt::format("ramsey: phase_shift_rad={}\n", format_double(shift));
  }
};

// ---------------------------------------------------------------- rb

struct RbCommand {
  CommonOpts common;
  GateOpts gate{"tounhqc", 0.0, 0.0, kPi / 4.0, 8.660};
  ErrorOpts errors;
  QutritNoiseOpts noise{20.0, 10.0, 0.0, 0.0};
  std::string mode = "interleaved";
  std::vector<int> lengths = {1, 5, 10, 20, 35, 50};
  int sequences = 20;
  bool target_idle = false;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("rb", "Single-qubit randomized benchmarking of simulated gates");
    add_gate(cmd, gate, true);
    cmd->add_option("--mode", mode, "standard, interleaved or repeated")->capture_default_str();
    cmd->add_option("--lengths", lengths, "Sequence lengths m, strictly increasing")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--sequences", sequences, "Random sequences per length")->capture_default_str();
    cmd->add_flag("--target-idle", target_idle,
                  "Interleave an identity lasting as long as the target gate");
    add_errors(cmd, errors);
    add_qutrit_noise(cmd, noise);
    add_common(cmd, common);
    add_shots(cmd, common);
    cmd->callback([this, &action, &out] { action = [this, &out] { run(out); }; });
  }

  void run(std::ostream& out) const {
    Issues issues;
    check_common(issues, common);
    const auto scheme = scheme_of(issues, gate.scheme);
    issues.require(gate.omega0_mhz > 0.0, "--omega0-mhz must be positive");
    const ErrorInjection err = errors_of(issues, errors);
    const NoiseModel noise_model = qutrit_noise_of(issues, noise);
    const IntegratorConfig ic = integrator_of(common);

    RBConfig config;
    config.sequence_lengths = lengths;
    config.sequences_per_length = sequences;
    config.seed = common.seed;
    config.shots = common.shots;
    config.threads = common.threads;
    config.target_as_idle = target_idle;
    issues.attempt([&] { config.mode = parse_rb_mode(mode); });
    if (config.mode != RBMode::Standard) {
      config.target = spec_of(issues, gate.theta, gate.phi, gate.gamma);
    }
    issues.attempt([&] { config.validate(); });
    if (scheme && gate.omega0_mhz > 0.0) {
      // Clifford rotation angles plus the target; general recoveries are checked when run.
      std::vector<double> angles = {kPi / 2.0, 2.0 * kPi / 3.0, kPi};
      if (config.target) angles.push_back(config.target->gamma());
      for (double g : angles) {
        check_grid(issues, synthesize(*scheme, GateSpec(kPi / 2.0, 0.0, g), gate.omega0_mhz * kMHz),
                   ic, noise_model);
      }
    }
    issues.raise_if_any();

    json params = {{"scheme", gate.scheme},  {"mode", mode},
                   {"lengths", lengths},     {"sequences", sequences},
                   {"shots", common.shots},  {"omega0_mhz", gate.omega0_mhz},
                   {"errors", error_params(errors)}, {"noise", noise_params(noise)},
                   {"integrator", integrator_params(common)}};
    if (config.target) {
      params["target"] = {{"theta", gate.theta}, {"phi", gate.phi}, {"gamma", gate.gamma},
                          {"idle", target_idle}};
    }
    const RunMeta meta = RunMeta::make("rb", common.seed, params);
    const fs::path dir = prepare_out_dir(common);

    const SimulatedChannels channels(*scheme, gate.omega0_mhz * kMHz, noise_model, err, ic,
                                     common.threads);
    std::vector<std::pair<std::string, RBResult>> series;
    if (config.mode == RBMode::Interleaved) {
      RBConfig reference = config;
      reference.mode = RBMode::Standard;
      reference.target.reset();
      series.emplace_back("reference", rb_run(reference, channels));
    }
    series.emplace_back(std::string(to_string(config.mode)), rb_run(config, channels));

    CsvTable table({"series", "m", "mean", "stddev"});
    CsvTable samples({"series", "m", "sequence", "survival"});
    json results = json::object();
    for (const auto& [name, res] : series) {
      for (const auto& pt : res.survival) {
        table.add_row({name, std::to_string(pt.m), format_double(pt.mean),
                       format_double(pt.stddev)});
        for (std::size_t s = 0; s < pt.samples.size(); ++s) {
          samples.add_row({name, std::to_string(pt.m), std::to_string(s),
                           format_double(pt.samples[s])});
        }
      }
      if (res.fit.status == FitStatus::Failed) {
        throw NumericFailure("decay fit failed for the " + name + " series");
      }
      results[name] = fit_json(res.fit);
    }
    if (config.mode == RBMode::Interleaved) {
      const auto est = interleaved_gate_error(series[0].second.fit.p, series[1].second.fit.p);
      results["gate_error"] = est.error;
      results["gate_fidelity"] = est.fidelity;
      results["gate_error_out_of_range"] = est.out_of_range;
    }
    table.write(dir / "rb.csv", meta);
    samples.write(dir / "rb_samples.csv", meta);
    write_summary(dir / "rb_summary.json", meta, params, results);
    out << fmt::format("rb: {} p={}\n", series.back().first,
                       format_double(series.back().second.fit.p));
  }
};

// ---------------------------------------------------------------- scan

struct ScanCommand {
  CommonOpts common;
  GateOpts gate{"tounhqc", 0.0, 0.0, kPi / 4.0, 8.660};
  CompositeNoiseOpts noise;
  double g_mhz = 5.0;
  double amp_min = -0.05, amp_max = 0.05, det_min = -0.05, det_max = 0.05;
  int resolution = 21;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("scan", "Phase-gate fidelity over amplitude and detuning errors");
    cmd->add_option("--scheme", gate.scheme, "Loop schedule: tounhqc or nhqc")->capture_default_str();
    cmd->add_option("--gamma", gate.gamma, "Phase gate angle, rad")->capture_default_str();
    cmd->add_option("--g-mhz", g_mhz, "Coupling strength g/2pi, MHz")->capture_default_str();
    cmd->add_option("--amp-min", amp_min, "Lowest dA/A")->capture_default_str();
    cmd->add_option("--amp-max", amp_max, "Highest dA/A")->capture_default_str();
    cmd->add_option("--det-min", det_min, "Lowest relative detuning")->capture_default_str();
    cmd->add_option("--det-max", det_max, "Highest relative detuning")->capture_default_str();
    cmd->add_option("--resolution", resolution, "Points per axis")->capture_default_str();
    add_composite_noise(cmd, noise);
    add_common(cmd, common);
    cmd->callback([this, &action, &out] { action = [this, &out] { run(out); }; });
  }

  void run(std::ostream& out) const {
    Issues issues;
    check_common(issues, common);
    const auto scheme = scheme_of(issues, gate.scheme);
    ScanConfig config;
    config.gamma = gate.gamma;
    config.model.g_eff = g_mhz * kMHz;
    config.amp_min = amp_min;
    config.amp_max = amp_max;
    config.det_min = det_min;
    config.det_max = det_max;
    config.resolution = resolution;
    config.noise = composite_noise_of(issues, noise);
    config.integrator = integrator_of(common);
    config.threads = common.threads;
    issues.require(gate.gamma > 0.0 && gate.gamma < kTwoPi, "--gamma must lie in (0, 2 pi)");
    issues.attempt([&] { config.validate(); });
    if (scheme && g_mhz > 0.0 && gate.gamma > 0.0 && gate.gamma < kTwoPi) {
      config.scheme = *scheme;
      issues.attempt([&] {
        check_grid(issues, build_cphase_schedule(gate.gamma, config.model.g_eff, *scheme),
                   config.integrator, config.noise);
      });
    }
    issues.raise_if_any();

    const json params = {{"scheme", gate.scheme},   {"gamma", gate.gamma},  {"g_mhz", g_mhz},
                         {"amp_range", {amp_min, amp_max}}, {"det_range", {det_min, det_max}},
                         {"resolution", resolution}, {"noise", noise_params(noise)},
                         {"integrator", integrator_params(common)}};
    const RunMeta meta = RunMeta::make("scan", common.seed, params);
    const fs::path dir = prepare_out_dir(common);

    const ScanResult result = robustness_scan(config);
    CsvTable table({"amp_err", "det_err", "fidelity"});
    double f_min = 1.0;
    double f_max = 0.0;
    for (std::size_t i = 0; i < result.amp_axis.size(); ++i) {
      for (std::size_t j = 0; j < result.det_axis.size(); ++j) {
        const double f = result.fidelity(long(i), long(j));
        require_finite(f, "scan fidelity");
        f_min = std::min(f_min, f);
        f_max = std::max(f_max, f);
        table.add_row(std::vector<double>{result.amp_axis[i], result.det_axis[j], f});
      }
    }
    table.write(dir / "scan.csv", meta);
    const json results = {{"fidelity_min", f_min},
                          {"fidelity_max", f_max},
                          {"fidelity_at_zero", scan_point_fidelity(config, 0.0, 0.0)}};
    write_summary(dir / "scan_summary.json", meta, params, results);
    out << fmt::format("scan: {} points, fidelity in [{}, {}]\n", table.rows(),
                       format_double(f_min), format_double(f_max));
  }
};

// ---------------------------------------------------------------- compare

struct CompareCommand {
  CommonOpts common;
  GateOpts gate{"tounhqc", 0.0, 0.0, kPi / 4.0, 8.660};
  ErrorOpts errors;
  QutritNoiseOpts qutrit_noise{20.0, 10.0, 0.0, 0.0};
  CompositeNoiseOpts noise{20.0, 20.0, 0.0};
  double g_mhz = 5.0;
  std::string target = "cphase";

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("compare", "Duration and error of both schemes under the same noise");
    cmd->add_option("--target", target, "cphase (control-phase gate) or single (qutrit phase gate)")
        ->capture_default_str();
    cmd->add_option("--gamma", gate.gamma, "Phase angle, rad")->capture_default_str();
    cmd->add_option("--g-mhz", g_mhz, "Coupling strength g/2pi for --target cphase, MHz")
        ->capture_default_str();
    cmd->add_option("--omega0-mhz", gate.omega0_mhz, "Omega0/2pi for --target single, MHz")
        ->capture_default_str();
    add_errors(cmd, errors);
    add_composite_noise(cmd, noise);
    add_qutrit_noise(cmd, qutrit_noise);
    add_common(cmd, common);
    cmd->callback([this, &action, &out] { action = [this, &out] { run(out); }; });
  }

  void run(std::ostream& out) const {
    Issues issues;
    check_common(issues, common);
    issues.require(target == "cphase" || target == "single", "--target must be cphase or single");
    const bool cphase = target != "single";
    CompareConfig config;
    config.gamma = gate.gamma;
    config.target = cphase ? CompareTarget::ControlPhase : CompareTarget::SingleQubit;
    config.omega0 = (cphase ? g_mhz : gate.omega0_mhz) * kMHz;
    config.err = errors_of(issues, errors);
    config.integrator = integrator_of(common);
    config.noise = cphase ? composite_noise_of(issues, noise) : qutrit_noise_of(issues, qutrit_noise);
    issues.require(config.omega0 > 0.0, "drive strength must be positive");
    issues.require(gate.gamma > 0.0 && gate.gamma < kTwoPi, "--gamma must lie in (0, 2 pi)");
    if (config.omega0 > 0.0 && gate.gamma > 0.0 && gate.gamma < kTwoPi) {
      for (Scheme s : {Scheme::Tounhqc, Scheme::Nhqc}) {
        issues.attempt([&] {
          const PulseSchedule sch = cphase ? build_cphase_schedule(gate.gamma, config.omega0, s)
                                           : synthesize(s, GateSpec(0.0, 0.0, gate.gamma), config.omega0);
          check_grid(issues, sch, config.integrator, config.noise);
        });
      }
    }
    issues.raise_if_any();

    json params = {{"target", target}, {"gamma", gate.gamma}, {"errors", error_params(errors)},
                   {"integrator", integrator_params(common)}};
    if (cphase) {
      params["g_mhz"] = g_mhz;
      params["noise"] = noise_params(noise);
    } else {
      params["omega0_mhz"] = gate.omega0_mhz;
      params["noise"] = noise_params(qutrit_noise);
    }
    const RunMeta meta = RunMeta::make("compare", common.seed, params);
    const fs::path dir = prepare_out_dir(common);

    const CompareReport r = compare_schemes(config);
    require_finite(r.fidelity_tounhqc + r.fidelity_nhqc, "compare fidelities");
    CsvTable table({"scheme", "tau_ns", "fidelity", "error"});
    table.add_row({"tounhqc", format_double(r.tau_tounhqc / kNs), format_double(r.fidelity_tounhqc),
                   format_double(r.error_tounhqc)});
    table.add_row({"nhqc", format_double(r.tau_nhqc / kNs), format_double(r.fidelity_nhqc),
                   format_double(r.error_nhqc)});
    table.write(dir / "compare.csv", meta);
    const json results = {
        {"tau_tounhqc_ns", r.tau_tounhqc / kNs}, {"tau_nhqc_ns", r.tau_nhqc / kNs},
        {"tau_ratio", r.tau_tounhqc / r.tau_nhqc}, {"fidelity_tounhqc", r.fidelity_tounhqc},
        {"fidelity_nhqc", r.fidelity_nhqc},       {"error_tounhqc", r.error_tounhqc},
        {"error_nhqc", r.error_nhqc},
        {"error_reduction", r.error_reduction ? json(*r.error_reduction) : json("n/a")}};
    write_summary(dir / "compare_summary.json", meta, params, results);
    out << fmt::format("compare: error_reduction={}\n",
                       r.error_reduction ? format_double(*r.error_reduction) : "n/a");
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Holonomic single- and two-qubit gate simulator", "holo"};
  app.set_version_flag("--version", std::string(HOLONOMY_VERSION));
  app.set_config("--config", "", "TOML/INI configuration file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  std::function<void()> action;
  GateCommand gate;
  TrajectoryCommand trajectory;
  RamseyCommand ramsey;
  RbCommand rb;
  ScanCommand scan;
  CompareCommand compare;
  gate.attach(app, action, out);
  trajectory.attach(app, action, out);
  ramsey.attach(app, action, out);
  rb.attach(app, action, out);
  scan.attach(app, action, out);
  compare.attach(app, action, out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumericFailure;
  }
}

}  // namespace holo::cli
