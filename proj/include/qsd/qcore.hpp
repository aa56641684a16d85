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
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qsd/linalg.hpp"

namespace qsd {

/// Normalised state vector. Construction rejects vectors whose squared norm
/// differs from one by more than the tolerance.
class Ket {
 public:
  explicit Ket(Vector amplitudes, double tol = kDefaultTol);

  /// Rescales v to unit norm. Throws ValidationError on the zero vector.
  static Ket normalized(const Vector& v);
  /// Computational basis vector |index> in dimension dim.
  static Ket basis(Eigen::Index dim, Eigen::Index index);

  const Vector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

  /// <this|other>
  Complex inner(const Ket& other) const;
  /// |<this|other>|^2
  double fidelity(const Ket& other) const;
  Matrix projector() const;

  /// Same ray, with the first nonzero amplitude real and non-negative.
  Ket canonical() const;

 private:
  Vector amplitudes_;
};

/// Hermitian, positive semi-definite, unit-trace operator.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix entries, double tol = kDefaultTol);

  static DensityOperator pure(const Ket& ket);
  static DensityOperator maximally_mixed(Eigen::Index dim);
  /// sum_r p_r |psi_r><psi_r|
  static DensityOperator mixture(std::span<const double> weights, std::span<const Ket> kets);

  const Matrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  /// Ascending.
  RealVector eigenvalues() const;
  double purity() const;

 private:
  Matrix entries_;
};

/// Checks the three density-operator invariants without constructing one.
bool is_density_operator(const Matrix& m, double tol = kDefaultTol);

/// Pure state sum_jk b_jk |j>_A |k>_B with amplitudes held as a dA x dB matrix.
class BipartiteState {
 public:
  explicit BipartiteState(Matrix amplitudes, double tol = kDefaultTol);
  /// Reshapes a joint vector with index j * dB + k.
  static BipartiteState from_vector(const Vector& joint, Eigen::Index dim_a, Eigen::Index dim_b,
                                    double tol = kDefaultTol);
  static BipartiteState product(const Ket& a, const Ket& b);

  const Matrix& amplitudes() const { return amplitudes_; }
  Eigen::Index dim_a() const { return amplitudes_.rows(); }
  Eigen::Index dim_b() const { return amplitudes_.cols(); }
  Vector joint_vector() const;

 private:
  Matrix amplitudes_;
};

struct SchmidtDecomposition {
  /// Nonzero coefficients, descending. Terms below the cutoff are dropped.
  RealVector coefficients;
  std::vector<Ket> basis_a;
  std::vector<Ket> basis_b;
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;

  Eigen::Index rank() const { return coefficients.size(); }
  /// sum_j c_j |a_j>|b_j>
  BipartiteState reconstruct() const;
};

enum class Subsystem { A, B };

struct BlochVector {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
};

/// Tr(rho obs).
Complex expectation(const DensityOperator& rho, const Matrix& obs);

/// Schmidt form via the singular value decomposition of the amplitude matrix.
/// Coefficients at or below cutoff * (largest) are dropped. Degenerate
/// coefficients are ordered by the lexicographic order of the canonical
/// A-side basis amplitudes.
SchmidtDecomposition schmidt(const BipartiteState& psi, double cutoff = kPinvCutoff);

/// Reduced density operator of the kept subsystem.
DensityOperator partial_trace(const BipartiteState& psi, Subsystem keep);

/// -sum p log2 p with 0 log 0 = 0. Entries below zero are treated as zero.
double shannon_entropy(const RealVector& probabilities);
double von_neumann_entropy(const DensityOperator& rho);
/// Entropy of entanglement in ebits.
double entanglement_entropy(const BipartiteState& psi);

/// Pauli matrices in the basis {|+>, |->}, with sigma_z |+> = |+>.
const std::array<Matrix, 3>& pauli_matrices();
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();

/// rho = (1 + a.sigma) / 2. Throws ValidationError when |a| > 1 + tol.
DensityOperator bloch_to_density(const BlochVector& bloch, double tol = kDefaultTol);
/// a_k = Tr(sigma_k rho). Throws DimensionError unless d = 2.
BlochVector density_to_bloch(const DensityOperator& rho);

/// Haar-random pure state.
Ket random_ket(Eigen::Index dim, std::mt19937_64& rng);
/// Uniform on the Bloch sphere: cos(polar) uniform in [-1, 1], azimuth uniform.
Ket haar_qubit(std::mt19937_64& rng);
/// Random full-rank mixed state from a Ginibre matrix.
DensityOperator random_density(Eigen::Index dim, std::mt19937_64& rng);
BipartiteState random_bipartite(Eigen::Index dim_a, Eigen::Index dim_b, std::mt19937_64& rng);

}  // namespace qsd
