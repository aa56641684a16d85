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
#include <vector>

#include "qsd/unambiguous.hpp"

namespace qsd {

/// Everything needed to concentrate the entanglement of one bipartite pure
/// state by a local filtering operation on A.
struct ConcentrationPlan {
  Eigen::Index rank = 0;
  SchmidtDecomposition schmidt;
  /// |x_k> = sum_j c_j exp(2 pi i j k / N)|a_j>, a symmetric family on A.
  std::vector<Ket> x_states;
  /// |y_k> = (1/sqrt N) sum_j exp(-2 pi i j k / N)|b_j>, orthonormal on B.
  std::vector<Ket> y_basis;
  std::vector<Ket> target_basis;
  /// A_O = sum_k sqrt(P_k) / <x_k^perp|x_k> |phi_k><x_k^perp|.
  Matrix orthogonaliser;
  double success_prob = 0.0;
};

/// Throws ValidationError when the Schmidt rank is below min(dA, dB).
/// target_basis defaults to the Schmidt basis on A, which is the eigenbasis of
/// the generator of the x-family.
ConcentrationPlan build_plan(const BipartiteState& psi,
                             std::optional<std::vector<Ket>> target_basis = std::nullopt);

/// sum_k sqrt(success) / <x_k^perp|x_k> |phi_k><x_k^perp| for linearly
/// independent x-states.
Matrix orthogonaliser(std::span<const Ket> x_states, double success, std::span<const Ket> target_basis);

struct ConcentrationResult {
  BipartiteState output;
  double success_prob;
};

/// Applies A_O (x) 1 and renormalises. success_prob is the squared norm of
/// the filtered vector.
ConcentrationResult concentrate(const BipartiteState& psi);
ConcentrationResult concentrate(const ConcentrationPlan& plan, const BipartiteState& psi);

struct OrthogonaliserReport {
  /// |<phi_k| post-state>|^2 after filtering |x_k>.
  std::vector<double> fidelities;
  /// Tr(A_O |x_k><x_k| A_O^dagger).
  std::vector<double> probabilities;
  /// Smallest eigenvalue of 1 - A_O^dagger A_O.
  double failure_margin = 0.0;
  bool passed = false;
};

OrthogonaliserReport verify_orthogonaliser(const ConcentrationPlan& plan, double tol = kDefaultTol);

}  // namespace qsd
