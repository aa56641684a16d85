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

#include <complex>

#include <Eigen/Dense>

namespace qsd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Entrywise absolute tolerance for invariant checks.
inline constexpr double kDefaultTol = 1e-9;
/// Eigenvalues at or below this fraction of the largest are treated as zero.
inline constexpr double kPinvCutoff = 1e-12;

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

/// Largest entrywise modulus of op - op^dagger.
double hermiticity_defect(const Matrix& op);
bool is_hermitian(const Matrix& op, double tol = kDefaultTol);
bool is_unitary(const Matrix& op, double tol = kDefaultTol);

/// Eigendecomposition of the Hermitian part of op. Throws ValidationError when
/// op is not square or not Hermitian within tol.
HermitianEigen hermitian_eigen(const Matrix& op, double tol = kDefaultTol);

double min_eigenvalue(const Matrix& op, double tol = kDefaultTol);

/// Square root of a PSD operator. Negative eigenvalues are clamped to zero.
Matrix herm_sqrt(const Matrix& op, double tol = kDefaultTol);

/// Inverse square root on the support of a Hermitian PSD operator. Eigenvalues
/// at or below cutoff * (largest eigenvalue) are mapped to zero, so R op R is
/// the projector onto the support.
Matrix herm_inv_sqrt(const Matrix& op, double cutoff = kPinvCutoff);

/// exp(-i H t) for Hermitian H.
Matrix unitary_propagator(const Matrix& hamiltonian, double time);

Matrix kron(const Matrix& a, const Matrix& b);

/// Number of Gram eigenvalues above cutoff * (largest) for the columns of vecs.
Eigen::Index numerical_rank(const Matrix& vecs, double cutoff);

/// Orthonormal basis of the orthogonal complement of the column span of an
/// isometry (columns assumed orthonormal).
Matrix orthogonal_complement(const Matrix& isometry);

}  // namespace qsd
