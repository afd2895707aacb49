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

namespace holo {

enum class FitStatus { Converged, Degenerate, Failed };

std::string_view to_string(FitStatus status);

/// F(m) = A p^m + B with covariance-derived standard errors. Standard errors
/// are NaN when there are no residual degrees of freedom.
struct DecayFit {
  double a = 0.0;
  double p = 0.0;
  double b = 0.0;
  double a_err = 0.0;
  double p_err = 0.0;
  double b_err = 0.0;
  int iterations = 0;
  FitStatus status = FitStatus::Failed;
};

/// Levenberg-Marquardt least squares from A = 0.5, p = 0.99, B = 0.5.
/// Flat data (spread < 1e-9) returns p = 1, A = 0, B = mean with status
/// Degenerate. Requires at least three distinct m values.
DecayFit fit_decay(const std::vector<double>& m_values, const std::vector<double>& f_values,
                   int max_iterations = 500);

}  // namespace holo
