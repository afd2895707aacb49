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

#include "holonomy/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace holo {

StateVector::StateVector(Ket amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw InvalidArgument("state vector must be non-empty");
  if (std::abs(amps_.norm() - 1.0) > kTolerance) {
    throw InvalidArgument("state vector is not normalized (norm " +
                          std::to_string(amps_.norm()) + ")");
  }
}

StateVector StateVector::basis(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) {
    throw InvalidArgument("basis index out of range");
  }
  Ket v = Ket::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v), Trusted{});
}

StateVector StateVector::normalized(Ket amplitudes) {
  const double n = amplitudes.norm();
  if (n < 1e-300) throw InvalidArgument("cannot normalize a zero vector");
  return StateVector(amplitudes / n, Trusted{});
}

DensityMatrix StateVector::projector() const {
  return trusted_density(amps_ * amps_.adjoint());
}

StateVector trusted_state(Ket amplitudes) {
  return StateVector(std::move(amplitudes), StateVector::Trusted{});
}

DensityMatrix::DensityMatrix(Operator entries) : rho_(std::move(entries)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
    throw InvalidArgument("density matrix must be square and non-empty");
  }
  if (!is_hermitian(rho_)) throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(trace() - 1.0) > kTolerance) {
    throw InvalidArgument("density matrix trace is not 1");
  }
  if (min_eigenvalue() < -kTolerance) {
    throw InvalidArgument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw InvalidArgument("dimension must be positive");
  return DensityMatrix(Operator::Identity(dim, dim) / double(dim), Trusted{});
}

double DensityMatrix::min_eigenvalue() const {
  const Operator herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityMatrix trusted_density(Operator entries) {
  return DensityMatrix(std::move(entries), DensityMatrix::Trusted{});
}

double max_abs(const Operator& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Operator& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - Operator::Identity(m.rows(), m.cols())) <= tol;
}

Operator tensor_product(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  return trusted_state(tensor_product(Operator(a.amplitudes()),
                                      Operator(b.amplitudes())));
}

Operator hermitian_propagator(const Operator& hamiltonian, double dt) {
  if (!is_hermitian(hamiltonian)) {
    throw InvalidHamiltonian("Hamiltonian is not Hermitian within tolerance");
  }
  const Operator herm = 0.5 * (hamiltonian + hamiltonian.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(herm);
  const Eigen::VectorXd& w = es.eigenvalues();
  Ket phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -w(k) * dt);
  const Operator& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

double unattenuated_fidelity(const DensityMatrix& rho_th,
                             const DensityMatrix& rho_out) {
  if (rho_th.dim() != rho_out.dim()) {
    throw DimensionMismatch("unattenuated_fidelity: dimension mismatch");
  }
  const Operator& a = rho_th.entries();
  const Operator& b = rho_out.entries();
  const double overlap = (a * b).trace().real();
  const double norm = std::sqrt((a * a).trace().real() * (b * b).trace().real());
  return std::clamp(overlap / norm, 0.0, 1.0);
}

double average_gate_fidelity(const Operator& ideal, const Operator& actual) {
  if (ideal.rows() != actual.rows() || ideal.cols() != actual.cols()) {
    throw DimensionMismatch("average_gate_fidelity: dimension mismatch");
  }
  const double d = double(ideal.rows());
  const double overlap = std::norm((ideal.adjoint() * actual).trace());
  return std::clamp((overlap + d) / (d * (d + 1.0)), 0.0, 1.0);
}

double phase_invariant_distance(const Operator& u, const Operator& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionMismatch("phase_invariant_distance: dimension mismatch");
  }
  const Complex tr = (v.adjoint() * u).trace();
  const Complex phase = std::abs(tr) > 0 ? tr / std::abs(tr) : Complex(1.0);
  return max_abs(u - phase * v);
}

BlochPoint bloch_coordinates(const DensityMatrix& rho, int lower, int upper) {
  if (lower < 0 || upper < 0 || lower >= rho.dim() || upper >= rho.dim() ||
      lower == upper) {
    throw InvalidArgument("bloch_coordinates: invalid subspace indices");
  }
  const double pop = rho.population(lower) + rho.population(upper);
  if (pop < 1e-12) throw InvalidArgument("bloch_coordinates: empty subspace");
  BlochPoint p;
  p.population = pop;
  p.x = 2.0 * rho(lower, upper).real() / pop;
  p.y = 2.0 * rho(upper, lower).imag() / pop;
  p.z = (rho.population(lower) - rho.population(upper)) / pop;
  return p;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep,
                            const std::vector<int>& dims) {
  if (dims.empty() || keep < 0 || keep >= int(dims.size())) {
    throw InvalidArgument("partial_trace: invalid factor index");
  }
  if (std::any_of(dims.begin(), dims.end(), [](int d) { return d <= 0; })) {
    throw InvalidArgument("partial_trace: factor dimensions must be positive");
  }
  const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  if (total != rho.dim()) {
    throw DimensionMismatch("partial_trace: factor dimensions do not match state");
  }
  // index = (outer * dk + k) * inner + r
  int outer = 1;
  for (int f = 0; f < keep; ++f) outer *= dims[f];
  const int dk = dims[keep];
  const int inner = total / (outer * dk);

  Operator out = Operator::Zero(dk, dk);
  for (int a = 0; a < dk; ++a) {
    for (int b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (int o = 0; o < outer; ++o) {
        for (int r = 0; r < inner; ++r) {
          acc += rho((o * dk + a) * inner + r, (o * dk + b) * inner + r);
        }
      }
      out(a, b) = acc;
    }
  }
  return trusted_density(std::move(out));
}

namespace pauli {
Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }
Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

}  // namespace holo
