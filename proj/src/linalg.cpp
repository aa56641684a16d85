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

#include "qsd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsd/error.hpp"

namespace qsd {

double hermiticity_defect(const Matrix& op) {
  if (op.rows() != op.cols()) {
    throw DimensionError("operator is not square");
  }
  return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& op, double tol) {
  return op.rows() == op.cols() && hermiticity_defect(op) <= tol;
}

bool is_unitary(const Matrix& op, double tol) {
  if (op.rows() != op.cols()) return false;
  const Matrix residual = op.adjoint() * op - Matrix::Identity(op.rows(), op.cols());
  return residual.cwiseAbs().maxCoeff() <= tol;
}

HermitianEigen hermitian_eigen(const Matrix& op, double tol) {
  if (op.rows() != op.cols()) {
    throw DimensionError("operator is not square");
  }
  if (op.size() == 0) {
    throw DimensionError("operator is empty");
  }
  const double defect = hermiticity_defect(op);
  if (defect > tol) {
    throw ValidationError("operator is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const Matrix sym = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Matrix& op, double tol) {
  return hermitian_eigen(op, tol).values(0);
}

Matrix herm_sqrt(const Matrix& op, double tol) {
  const auto eig = hermitian_eigen(op, tol);
  // Eigenvalues at the rounding floor are zero; their square roots would not be.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  const RealVector roots = eig.values.unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix herm_inv_sqrt(const Matrix& op, double cutoff) {
  const auto eig = hermitian_eigen(op);
  const double largest = eig.values.maxCoeff();
  Vector scale(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    scale(i) = (largest > 0.0 && v > cutoff * largest) ? 1.0 / std::sqrt(v) : 0.0;
  }
  return eig.vectors * scale.asDiagonal() * eig.vectors.adjoint();
}

Matrix unitary_propagator(const Matrix& hamiltonian, double time) {
  const auto eig = hermitian_eigen(hamiltonian);
  Vector phases(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    phases(i) = std::polar(1.0, -eig.values(i) * time);
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::Index numerical_rank(const Matrix& vecs, double cutoff) {
  if (vecs.cols() == 0) return 0;
  const Matrix gram = vecs.adjoint() * vecs;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
  const RealVector& values = solver.eigenvalues();
  const double largest = values.maxCoeff();
  if (largest <= 0.0) return 0;
  return std::count_if(values.begin(), values.end(),
                       [&](double v) { return v > cutoff * largest; });
}

Matrix orthogonal_complement(const Matrix& isometry) {
  const Eigen::Index n = isometry.rows();
  const Eigen::Index k = isometry.cols();
  Eigen::HouseholderQR<Matrix> qr(isometry);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - k);
}

}  // namespace qsd
