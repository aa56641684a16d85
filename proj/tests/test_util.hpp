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

#include <cmath>
#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qsd/qcore.hpp"

namespace qsd::testing {

inline Ket ket2(double a, double b) {
  Vector v(2);
  v << a, b;
  return Ket::normalized(v);
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Hermitian eigenvalues via the general complex eigensolver, independent of
/// the library's Hermitian path. Ascending.
inline std::vector<double> oracle_eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

/// rho_A built by explicit summation over B.
inline Matrix oracle_reduced_a(const Matrix& b) {
  Matrix rho = Matrix::Zero(b.rows(), b.rows());
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      for (Eigen::Index k = 0; k < b.cols(); ++k) rho(i, j) += b(i, k) * std::conj(b(j, k));
    }
  }
  return rho;
}

/// Haar unitary from the QR factorisation of a Ginibre matrix.
inline Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

/// Phase-insensitive state equality.
inline void expect_same_ray(const Ket& a, const Ket& b, double tol = 1e-9) {
  EXPECT_NEAR(std::abs(a.inner(b)), 1.0, tol);
}

}  // namespace qsd::testing
