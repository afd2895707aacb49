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

#include "holonomy/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include "holonomy/quantum.hpp"

namespace holo {

std::string_view to_string(FitStatus status) {
  switch (status) {
    case FitStatus::Converged: return "converged";
    case FitStatus::Degenerate: return "degenerate";
    case FitStatus::Failed: return "failed";
  }
  return "failed";
}

namespace {

struct Model {
  const std::vector<double>& m;
  const std::vector<double>& f;

  Eigen::VectorXd residuals(const Eigen::Vector3d& x) const {
    Eigen::VectorXd r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r(i) = x(0) * std::pow(x(1), m[i]) + x(2) - f[i];
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::Vector3d& x) const {
    Eigen::MatrixXd j(m.size(), 3);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double pm = std::pow(x(1), m[i]);
      j(i, 0) = pm;
      j(i, 1) = m[i] == 0.0 ? 0.0 : x(0) * m[i] * std::pow(x(1), m[i] - 1.0);
      j(i, 2) = 1.0;
    }
    return j;
  }
};

}  // namespace

DecayFit fit_decay(const std::vector<double>& m_values, const std::vector<double>& f_values,
                   int max_iterations) {
  if (m_values.size() != f_values.size()) {
    throw InvalidArgument("fit_decay: m and F must have equal length");
  }
  if (std::set<double>(m_values.begin(), m_values.end()).size() < 3) {
    throw InvalidArgument("fit_decay: at least three distinct sequence lengths are required");
  }

  DecayFit fit;
  const auto [lo, hi] = std::minmax_element(f_values.begin(), f_values.end());
  if (*hi - *lo < 1e-9) {
    fit.p = 1.0;
    fit.a = 0.0;
    fit.b = std::accumulate(f_values.begin(), f_values.end(), 0.0) / double(f_values.size());
    fit.a_err = fit.p_err = fit.b_err = std::numeric_limits<double>::quiet_NaN();
    fit.status = FitStatus::Degenerate;
    return fit;
  }

  const Model model{m_values, f_values};
  Eigen::Vector3d x(0.5, 0.99, 0.5);
  double cost = model.residuals(x).squaredNorm();
  double lambda = 1e-3;
  bool converged = false;
  int it = 0;
  for (; it < max_iterations && !converged; ++it) {
    const Eigen::MatrixXd j = model.jacobian(x);
    const Eigen::VectorXd r = model.residuals(x);
    const Eigen::Matrix3d jtj = j.transpose() * j;
    const Eigen::Vector3d g = j.transpose() * r;
    bool accepted = false;
    while (!accepted && lambda < 1e12) {
      Eigen::Matrix3d damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const Eigen::Vector3d step = damped.ldlt().solve(-g);
      const Eigen::Vector3d trial = x + step;
      if (trial(1) > 0.0) {
        const double trial_cost = model.residuals(trial).squaredNorm();
        if (trial_cost <= cost) {
          const bool small_step = step.norm() <= 1e-13 * (x.norm() + 1e-13);
          const bool flat = cost - trial_cost <= 1e-15 * std::max(cost, 1e-300);
          x = trial;
          converged = small_step || (flat && g.norm() < 1e-12) || trial_cost < 1e-30;
          cost = trial_cost;
          lambda = std::max(lambda / 10.0, 1e-12);
          accepted = true;
          continue;
        }
      }
      lambda *= 10.0;
    }
    if (!accepted) converged = true;  // no descent direction left
  }

  fit.a = x(0);
  fit.p = x(1);
  fit.b = x(2);
  fit.iterations = it;
  const Eigen::MatrixXd j = model.jacobian(x);
  const Eigen::Matrix3d jtj = j.transpose() * j;
  const long dof = long(m_values.size()) - 3;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(jtj);
  if (!converged || !std::isfinite(cost)) {
    fit.status = FitStatus::Failed;
  } else if (!lu.isInvertible()) {
    fit.status = FitStatus::Degenerate;
  } else {
    fit.status = FitStatus::Converged;
  }
  if (dof > 0 && lu.isInvertible()) {
    const Eigen::Matrix3d cov = (cost / double(dof)) * lu.inverse();
    fit.a_err = std::sqrt(std::max(0.0, cov(0, 0)));
    fit.p_err = std::sqrt(std::max(0.0, cov(1, 1)));
    fit.b_err = std::sqrt(std::max(0.0, cov(2, 2)));
  } else {
    fit.a_err = fit.p_err = fit.b_err = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

}  // namespace holo
