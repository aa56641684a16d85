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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qsd/povm.hpp"

namespace qsd {

/// States with a priori probabilities.
class Ensemble {
 public:
  Ensemble(std::vector<DensityOperator> states, std::vector<double> priors,
           double tol = kDefaultTol);
  static Ensemble from_kets(std::span<const Ket> kets, std::vector<double> priors);
  static Ensemble uniform(std::span<const Ket> kets);

  const std::vector<DensityOperator>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }
  std::size_t size() const { return states_.size(); }
  Eigen::Index dim() const { return states_.front().dim(); }

 private:
  std::vector<DensityOperator> states_;
  std::vector<double> priors_;
};

/// assignment[k] is the state guessed on outcome k; nullopt for outcomes that
/// name no state (e.g. an inconclusive result).
using Assignment = std::vector<std::optional<std::size_t>>;

/// Outcome k <-> state k for k < ensemble size, unassigned beyond.
Assignment index_assignment(std::size_t outcomes, std::size_t states);

/// cos(theta)|+> +- sin(theta)|->, theta in [0, pi/4].
struct TwoStateFamily {
  double theta = 0.0;
  double eta_plus = 0.5;
  Ket plus = Ket::basis(2, 0);
  Ket minus = Ket::basis(2, 1);

  TwoStateFamily(double theta, double eta_plus);
  TwoStateFamily(double theta, double eta_plus, Ket plus, Ket minus);

  double eta_minus() const { return 1.0 - eta_plus; }
  /// eta_+ - eta_-
  double delta() const { return eta_plus - eta_minus(); }
  /// cos 2 theta
  double overlap() const;
  /// Delta cos 2theta / sqrt(1 + cos^2 2theta (Delta^2 - 1)); zero at theta = pi/4.
  double xi() const;
  Ket psi_plus() const;
  Ket psi_minus() const;
  Ensemble ensemble() const;
};

/// C(k, j): cost of announcing outcome k when state j was sent.
using CostMatrix = RealMatrix;

/// P(omega_k | rho_j) with rows indexed by state j, columns by outcome k.
RealMatrix channel_matrix(const Ensemble& ens, const Povm& povm);

/// 1 - sum_j eta_j Tr(Pi_{a(j)} rho_j). An empty assignment means index_assignment.
double error_probability(const Ensemble& ens, const Povm& povm, const Assignment& assignment = {});

/// sum_jk eta_j C_kj P(omega_k | rho_j).
double bayes_cost(const Ensemble& ens, const Povm& povm, const CostMatrix& cost);

/// Minimum error for two pure states with the given prior and overlap modulus.
double helstrom_bound(double eta_plus, double overlap);

/// Rank-one projective measurement attaining helstrom_bound for the family.
Povm helstrom_measurement(const TwoStateFamily& family);

struct OptimalityReport {
  Matrix gamma;
  /// Frobenius norm of Pi_j (eta_j rho_j - eta_k rho_k) Pi_k.
  RealMatrix pairwise_residuals;
  /// Smallest eigenvalue of Gamma - eta_j rho_j.
  RealVector psd_margins;
  double gamma_hermiticity = 0.0;
  bool passed = false;
};

/// Checks the necessary and sufficient minimum-error conditions. Every outcome
/// must be assigned to a state.
OptimalityReport hykl_check(const Ensemble& ens, const Povm& povm, const Assignment& assignment = {},
                            double tol = kDefaultTol);

/// States cycled by a single unitary: |psi_j> = sum_k c_k exp(2 pi i j k / N)|k>.
struct SymmetricFamily {
  std::vector<Complex> coefficients;
  Matrix generator;
  std::vector<Ket> states;

  std::size_t size() const { return states.size(); }
};

/// Coefficient c[k-1] multiplies |k>, k = 1..N; states are indexed j = 1..N
/// and stored at j-1. Throws ValidationError unless sum |c_k|^2 = 1.
SymmetricFamily make_symmetric(std::span<const Complex> coefficients, double tol = kDefaultTol);

/// Pretty-good measurement |omega_j> = Phi^(-1/2)|psi_j>, Phi = sum_j |psi_j><psi_j|.
/// When Phi is rank deficient the support pseudo-inverse is used and the
/// projector onto the kernel is appended as an extra outcome labelled "null".
Povm square_root_measurement(std::span<const Ket> states);
/// Throws ValidationError unless priors are uniform.
Povm square_root_measurement(std::span<const Ket> states, std::span<const double> priors);

/// 1 - (1/N) sum_j |<psi_j|Phi^(-1/2)|psi_j>|^2
double srm_error(std::span<const Ket> states);

/// Equally spaced real qubit states at angle 2 pi / 3.
std::array<Ket, 3> trine_states();

struct BruteForceResult {
  double error = 0.0;
  double angle = 0.0;
  Povm measurement;
};

/// Minimum error over projective measurements with basis angle phi in [0, pi)
/// on the real plane spanned by two pure states, sampled every `resolution`
/// radians. Ties resolve to the smallest angle.
BruteForceResult brute_force_two_state(const Ensemble& ens, double resolution);

}  // namespace qsd
