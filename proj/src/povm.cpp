// Copyright 2026 The QSD Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsd/povm.hpp"

#include <algorithm>
#include <string>

#include "qsd/error.hpp"

namespace qsd {

namespace {

std::vector<std::string> default_labels(std::vector<std::string> labels, std::size_t count) {
  if (labels.empty()) {
    for (std::size_t k = 0; k < count; ++k) labels.push_back(std::to_string(k));
  }
  if (labels.size() != count) {
    throw ValidationError("label count does not match outcome count");
  }
  return labels;
}

// Trace probabilities that are a hair below zero are clamped.
double clamp_probability(double p) { return std::max(p, 0.0); }

}  // namespace

void validate_povm(std::span<const Matrix> elements, double tol) {
  if (elements.empty()) {
    throw ValidationError("POVM has no elements");
  }
  const Eigen::Index d = elements.front().rows();
  Matrix total = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const Matrix& e = elements[k];
    if (e.rows() != d || e.cols() != d) {
      throw DimensionError("POVM element " + std::to_string(k) + " has the wrong shape");
    }
    const double lowest = min_eigenvalue(e, tol);
    if (lowest < -tol) {
      throw ValidationError("POVM element " + std::to_string(k) + " has negative eigenvalue " +
                            std::to_string(lowest));
    }
    total += e;
  }
  const double residual = (total - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (residual > tol) {
    throw ValidationError("POVM elements do not resolve the identity (residual " +
                          std::to_string(residual) + ")");
  }
}

Povm::Povm(std::vector<Matrix> elements, std::vector<std::string> labels, double tol)
    : elements_(std::move(elements)) {
  validate_povm(elements_, tol);
  labels_ = default_labels(std::move(labels), elements_.size());
}

Povm Povm::projective(std::span<const Ket> basis, std::vector<std::string> labels) {
  std::vector<Matrix> elements;
  elements.reserve(basis.size());
  for (const Ket& k : basis) elements.push_back(k.projector());
  return Povm(std::move(elements), std::move(labels));
}

double Povm::completeness_residual() const {
  Matrix total = Matrix::Zero(dim(), dim());
  for (const Matrix& e : elements_) total += e;
  return (total - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

KrausSet::KrausSet(std::vector<Matrix> operators, std::vector<std::string> labels, double tol)
    : operators_(std::move(operators)) {
  if (operators_.empty()) {
    throw ValidationError("Kraus set is empty");
  }
  const Eigen::Index d = operators_.front().cols();
  Matrix total = Matrix::Zero(d, d);
  for (const Matrix& a : operators_) {
    if (a.cols() != d) throw DimensionError("Kraus operators disagree on input dimension");
    total += a.adjoint() * a;
  }
  const double residual = (total - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (residual > tol) {
    throw ValidationError("Kraus operators are not trace preserving (residual " +
                          std::to_string(residual) + ")");
  }
  labels_ = default_labels(std::move(labels), operators_.size());
}

std::vector<double> outcome_probs(const Povm& povm, const DensityOperator& rho) {
  if (rho.dim() != povm.dim()) {
    throw DimensionError("state and POVM dimensions differ");
  }
  std::vector<double> probs;
  probs.reserve(povm.size());
  for (const Matrix& e : povm.elements()) {
    probs.push_back(clamp_probability((rho.matrix() * e).trace().real()));
  }
  return probs;
}

std::vector<double> outcome_probs(const Povm& povm, const Ket& psi) {
  if (psi.dim() != povm.dim()) {
    throw DimensionError("state and POVM dimensions differ");
  }
  std::vector<double> probs;
  probs.reserve(povm.size());
  for (const Matrix& e : povm.elements()) {
    probs.push_back(clamp_probability(psi.amplitudes().dot(e * psi.amplitudes()).real()));
  }
  return probs;
}

KrausSet kraus_from_povm(const Povm& povm, std::span<const Matrix> unitaries) {
  if (!unitaries.empty() && unitaries.size() != povm.size()) {
    throw ValidationError("need one unitary per POVM element");
  }
  std::vector<Matrix> ops;
  ops.reserve(povm.size());
  for (std::size_t k = 0; k < povm.size(); ++k) {
    Matrix root = herm_sqrt(povm[k]);
    if (!unitaries.empty()) {
      if (unitaries[k].rows() != povm.dim() || !is_unitary(unitaries[k])) {
        throw ValidationError("entry " + std::to_string(k) + " of unitaries is not unitary");
      }
      root = unitaries[k] * root;
    }
    ops.push_back(std::move(root));
  }
  return KrausSet(std::move(ops), povm.labels());
}

PostMeasurement post_state(const Matrix& kraus_op, const DensityOperator& rho) {
  if (kraus_op.cols() != rho.dim()) {
    throw DimensionError("Kraus operator does not act on this state");
  }
  Matrix out = kraus_op * rho.matrix() * kraus_op.adjoint();
  const double p = out.trace().real();
  if (p < kImpossibleOutcome) {
    throw ImpossibleOutcomeError("outcome is impossible for this state (probability " +
                                 std::to_string(p) + ")");
  }
  out /= p;
  out = 0.5 * (out + out.adjoint());
  return {DensityOperator(std::move(out)), p};
}

DensityOperator unread_update(const KrausSet& kraus, const DensityOperator& rho) {
  if (kraus.input_dim() != rho.dim()) {
    throw DimensionError("Kraus set does not act on this state");
  }
  const Eigen::Index out_dim = kraus[0].rows();
  Matrix out = Matrix::Zero(out_dim, out_dim);
  for (const Matrix& a : kraus.operators()) {
    if (a.rows() != out_dim) throw DimensionError("Kraus operators disagree on output dimension");
    out += a * rho.matrix() * a.adjoint();
  }
  out = 0.5 * (out + out.adjoint());
  return DensityOperator(std::move(out));
}

NaimarkDilation naimark_dilate(const Povm& povm) {
  const Eigen::Index d = povm.dim();
  const auto k_count = static_cast<Eigen::Index>(povm.size());
  const Eigen::Index joint = d * k_count;

  // Column s of V is sum_k Pi_k^(1/2)|s> (x) |k>.
  Matrix isometry = Matrix::Zero(joint, d);
  for (Eigen::Index k = 0; k < k_count; ++k) {
    const Matrix root = herm_sqrt(povm[static_cast<std::size_t>(k)]);
    for (Eigen::Index s = 0; s < d; ++s) {
      for (Eigen::Index r = 0; r < d; ++r) isometry(r * k_count + k, s) = root(r, s);
    }
  }
  const Matrix complement = orthogonal_complement(isometry);

  // U(|s> (x) |0>) = V|s>; the remaining columns span the complement.
  Matrix unitary(joint, joint);
  Eigen::Index next = 0;
  for (Eigen::Index s = 0; s < d; ++s) {
    for (Eigen::Index k = 0; k < k_count; ++k) {
      const Eigen::Index col = s * k_count + k;
      unitary.col(col) = (k == 0) ? Vector(isometry.col(s)) : Vector(complement.col(next++));
    }
  }

  NaimarkDilation out;
  out.system_dim = d;
  out.ancilla_dim = k_count;
  out.joint_unitary = std::move(unitary);
  for (Eigen::Index k = 0; k < k_count; ++k) out.ancilla_basis.push_back(Ket::basis(k_count, k));
  out.ancilla_init = Ket::basis(k_count, 0);
  return out;
}

std::vector<double> NaimarkDilation::probabilities(const DensityOperator& rho) const {
  if (rho.dim() != system_dim) {
    throw DimensionError("state does not match the dilated system");
  }
  const Matrix joint_in = kron(rho.matrix(), ancilla_init.projector());
  const Matrix joint_out = joint_unitary * joint_in * joint_unitary.adjoint();
  const Matrix identity = Matrix::Identity(system_dim, system_dim);
  std::vector<double> probs;
  probs.reserve(ancilla_basis.size());
  for (const Ket& a : ancilla_basis) {
    const Matrix readout = kron(identity, a.projector());
    probs.push_back(clamp_probability((readout * joint_out).trace().real()));
  }
  return probs;
}

DensityOperator evolve(const DensityOperator& rho, const Matrix& hamiltonian, double time) {
  if (hamiltonian.rows() != rho.dim() || hamiltonian.cols() != rho.dim()) {
    throw DimensionError("Hamiltonian dimension does not match state");
  }
  const Matrix u = unitary_propagator(hamiltonian, time);
  Matrix out = u * rho.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint());
  return DensityOperator(std::move(out));
}

}  // namespace qsd
