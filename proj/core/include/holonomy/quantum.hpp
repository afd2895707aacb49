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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace holo {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Absolute, elementwise-max tolerance for hermiticity, unitarity, norm and
// trace checks.
inline constexpr double kTolerance = 1e-9;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidHamiltonian : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DensityMatrix;

/// Normalized pure state over a finite-dimensional space.
class StateVector {
 public:
  /// Throws InvalidArgument if the norm deviates from 1 by more than 1e-9.
  explicit StateVector(Ket amplitudes);

  static StateVector basis(int dim, int index);
  /// Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(Ket amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Ket& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_(i); }

  DensityMatrix projector() const;

 private:
  struct Trusted {};
  StateVector(Ket amplitudes, Trusted) : amps_(std::move(amplitudes)) {}
  friend StateVector trusted_state(Ket amplitudes);

  Ket amps_;
};

/// Wraps a vector produced by norm-preserving evolution without rechecking.
StateVector trusted_state(Ket amplitudes);

/// Mixed state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Validates hermiticity, trace and eigenvalues against 1e-9.
  explicit DensityMatrix(Operator entries);

  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Operator& entries() const { return rho_; }
  Complex operator()(int i, int j) const { return rho_(i, j); }

  double trace() const { return rho_.trace().real(); }
  double min_eigenvalue() const;
  double population(int i) const { return rho_(i, i).real(); }

 private:
  struct Trusted {};
  DensityMatrix(Operator entries, Trusted) : rho_(std::move(entries)) {}
  friend DensityMatrix trusted_density(Operator entries);

  Operator rho_;
};

/// Wraps an integrator output without the eigenvalue check. Trajectories are
/// recorded through this path; tests assert the invariants separately.
DensityMatrix trusted_density(Operator entries);

bool is_hermitian(const Operator& m, double tol = kTolerance);
bool is_unitary(const Operator& m, double tol = kTolerance);
double max_abs(const Operator& m);

/// Kronecker product; the first factor is the most significant index.
Operator tensor_product(const Operator& a, const Operator& b);
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// exp(-i H dt) via Hermitian eigendecomposition. Throws InvalidHamiltonian if
/// H is not Hermitian within 1e-9.
Operator hermitian_propagator(const Operator& hamiltonian, double dt);

/// Tr(rho_th rho_out) / sqrt(Tr(rho_th^2) Tr(rho_out^2)).
double unattenuated_fidelity(const DensityMatrix& rho_th,
                             const DensityMatrix& rho_out);

/// (|Tr(U^dag V)|^2 + d) / (d (d + 1)); invariant under global phase.
double average_gate_fidelity(const Operator& ideal, const Operator& actual);

/// min over phi of max_ij |U_ij - e^{i phi} V_ij|, evaluated at the
/// trace-aligned phase.
double phase_invariant_distance(const Operator& u, const Operator& v);

struct BlochPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double population = 0.0;  // weight of the two-level block before renormalizing
};

/// Bloch vector of the 2x2 block spanned by levels (lower, upper).
/// Throws InvalidArgument if the block carries less than 1e-12 population.
BlochPoint bloch_coordinates(const DensityMatrix& rho, int lower = 0,
                             int upper = 1);

/// Reduced state of factor `keep` for a composite with the given factor
/// dimensions (first factor most significant).
DensityMatrix partial_trace(const DensityMatrix& rho, int keep,
                            const std::vector<int>& dims);

namespace pauli {
Eigen::Matrix2cd identity();
Eigen::Matrix2cd x();
Eigen::Matrix2cd y();
Eigen::Matrix2cd z();
}  // namespace pauli

}  // namespace holo
