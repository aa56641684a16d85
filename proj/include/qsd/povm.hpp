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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsd/qcore.hpp"

namespace qsd {

/// Positive operators resolving the identity, one per labelled outcome.
class Povm {
 public:
  /// Validates positivity and completeness. Labels default to "0", "1", ...
  explicit Povm(std::vector<Matrix> elements, std::vector<std::string> labels = {},
                double tol = kDefaultTol);

  /// Rank-one projectors onto an orthonormal basis.
  static Povm projective(std::span<const Ket> basis, std::vector<std::string> labels = {});

  const std::vector<Matrix>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Matrix& operator[](std::size_t k) const { return elements_[k]; }
  std::size_t size() const { return elements_.size(); }
  Eigen::Index dim() const { return elements_.front().rows(); }

  /// Max entrywise |sum_k Pi_k - 1|.
  double completeness_residual() const;

 private:
  std::vector<Matrix> elements_;
  std::vector<std::string> labels_;
};

/// Throws ValidationError describing the first violated invariant.
void validate_povm(std::span<const Matrix> elements, double tol = kDefaultTol);

/// Transformation operators with sum_k A_k^dagger A_k = 1.
class KrausSet {
 public:
  explicit KrausSet(std::vector<Matrix> operators, std::vector<std::string> labels = {},
                    double tol = kDefaultTol);

  const std::vector<Matrix>& operators() const { return operators_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Matrix& operator[](std::size_t k) const { return operators_[k]; }
  std::size_t size() const { return operators_.size(); }
  Eigen::Index input_dim() const { return operators_.front().cols(); }

 private:
  std::vector<Matrix> operators_;
  std::vector<std::string> labels_;
};

/// Unitary coupling to an ancilla followed by a von Neumann measurement of the
/// ancilla. Joint index ordering is system (x) ancilla, i.e. s * K + k.
struct NaimarkDilation {
  Eigen::Index system_dim = 0;
  Eigen::Index ancilla_dim = 0;
  Matrix joint_unitary;
  std::vector<Ket> ancilla_basis;
  Ket ancilla_init = Ket::basis(1, 0);

  /// Ancilla readout statistics after evolving rho (x) |init><init|.
  std::vector<double> probabilities(const DensityOperator& rho) const;
};

/// P(k|rho) = Tr(rho Pi_k).
std::vector<double> outcome_probs(const Povm& povm, const DensityOperator& rho);
/// P(k|psi) = <psi|Pi_k|psi>.
std::vector<double> outcome_probs(const Povm& povm, const Ket& psi);

/// A_k = U_k Pi_k^(1/2). An empty span means U_k = 1 for every k.
KrausSet kraus_from_povm(const Povm& povm, std::span<const Matrix> unitaries = {});

struct PostMeasurement {
  DensityOperator state;
  double probability;
};

/// Outcomes with probability below this are reported as impossible.
inline constexpr double kImpossibleOutcome = 1e-12;

/// rho' = A rho A^dagger / Tr(A rho A^dagger). Throws ImpossibleOutcomeError
/// when the probability is below kImpossibleOutcome.
PostMeasurement post_state(const Matrix& kraus_op, const DensityOperator& rho);

/// Non-selective update sum_k A_k rho A_k^dagger.
DensityOperator unread_update(const KrausSet& kraus, const DensityOperator& rho);

/// Minimal dilation: the isometry V = sum_k Pi_k^(1/2) (x) |k> completed to a
/// unitary on the joint space, with the ancilla initialised in |0>.
NaimarkDilation naimark_dilate(const Povm& povm);

/// U rho U^dagger with U = exp(-i H t), hbar = 1.
DensityOperator evolve(const DensityOperator& rho, const Matrix& hamiltonian, double time);

}  // namespace qsd
