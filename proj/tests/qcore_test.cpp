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

#include "qsd/qcore.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qsd/error.hpp"
#include "test_util.hpp"

namespace qsd {
namespace {

using testing::ket2;

Matrix singlet_amplitudes() {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 1) = 1.0 / std::sqrt(2.0);
  b(1, 0) = -1.0 / std::sqrt(2.0);
  return b;
}

TEST(Ket, RejectsUnnormalised) {
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(Ket{v}, ValidationError);
  EXPECT_NO_THROW(Ket::normalized(v));
  EXPECT_THROW(Ket::normalized(Vector::Zero(3)), ValidationError);
}

TEST(Ket, CanonicalPhaseMakesFirstAmplitudeRealNonNegative) {
  using namespace std::complex_literals;
  Vector v(3);
  v << 0.0, -0.6i, 0.8;
  const Ket k = Ket(v).canonical();
  EXPECT_NEAR(k[1].imag(), 0.0, 1e-15);
  EXPECT_GT(k[1].real(), 0.0);
  EXPECT_NEAR(std::abs(k[2]), 0.8, 1e-15);
}

TEST(DensityOperator, Invariants) {
  Matrix m(2, 2);
  m << 0.5, 0.0, 0.0, 0.6;
  EXPECT_THROW(DensityOperator{m}, ValidationError);
  m << 1.2, 0.0, 0.0, -0.2;
  EXPECT_THROW(DensityOperator{m}, ValidationError);
  m << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(DensityOperator{m}, ValidationError);
  EXPECT_THROW(DensityOperator(Matrix::Zero(2, 3)), DimensionError);
}

TEST(Expectation, PauliCases) {
  EXPECT_NEAR(std::abs(expectation(DensityOperator::maximally_mixed(2), pauli_z())), 0.0, 1e-15);
  EXPECT_NEAR(expectation(DensityOperator::pure(Ket::basis(2, 0)), pauli_z()).real(), 1.0, 1e-15);
  EXPECT_THROW(expectation(DensityOperator::maximally_mixed(3), pauli_z()), DimensionError);
}

TEST(Expectation, MatchesBlochComponents) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator rho = random_density(2, rng);
    const BlochVector b = density_to_bloch(rho);
    for (int k = 0; k < 3; ++k) {
      const Complex e = expectation(rho, pauli_matrices()[k]);
      EXPECT_NEAR(e.real(), b.a(k), 1e-12);
      EXPECT_NEAR(e.imag(), 0.0, 1e-12);
    }
  }
}

TEST(Pauli, TraceOrthogonalityAndActions) {
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const Complex t = (pauli_matrices()[k] * pauli_matrices()[l]).trace();
      EXPECT_EQ(t, Complex(k == l ? 2.0 : 0.0, 0.0));
    }
  }
  using namespace std::complex_literals;
  const Vector plus = Ket::basis(2, 0).amplitudes();
  const Vector minus = Ket::basis(2, 1).amplitudes();
  EXPECT_EQ(pauli_x() * plus, minus);
  EXPECT_EQ(pauli_x() * minus, plus);
  EXPECT_EQ(pauli_y() * plus, Vector(1i * minus));
  EXPECT_EQ(pauli_y() * minus, Vector(-1i * plus));
  EXPECT_EQ(pauli_z() * plus, plus);
  EXPECT_EQ(pauli_z() * minus, Vector(-minus));
}

TEST(Schmidt, ProductState) {
  const auto psi = BipartiteState::product(Ket::basis(2, 0), Ket::basis(2, 0));
  const auto s = schmidt(psi);
  ASSERT_EQ(s.rank(), 1);
  EXPECT_NEAR(s.coefficients(0), 1.0, 1e-12);
}

TEST(Schmidt, Singlet) {
  const auto s = schmidt(BipartiteState(singlet_amplitudes()));
  ASSERT_EQ(s.rank(), 2);
  EXPECT_NEAR(s.coefficients(0), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.coefficients(1), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Schmidt, CoefficientsAreRootsOfReducedSpectrum) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const BipartiteState psi = random_bipartite(3, 3, rng);
    const auto s = schmidt(psi);
    auto expected = testing::oracle_eigenvalues(testing::oracle_reduced_a(psi.amplitudes()));
    std::sort(expected.rbegin(), expected.rend());
    ASSERT_EQ(s.rank(), 3);
    for (Eigen::Index j = 0; j < 3; ++j) {
      EXPECT_NEAR(s.coefficients(j), std::sqrt(std::max(expected[static_cast<std::size_t>(j)], 0.0)), 1e-10);
    }
  }
}

TEST(Schmidt, ReconstructionIsIdentityUpToPhase) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> dim(1, 4);
    const BipartiteState psi = random_bipartite(dim(rng), dim(rng), rng);
    const auto s = schmidt(psi);
    const Complex overlap = psi.joint_vector().dot(s.reconstruct().joint_vector());
    EXPECT_GE(std::norm(overlap), 1.0 - 1e-9);
    for (Eigen::Index j = 1; j < s.rank(); ++j) EXPECT_GE(s.coefficients(j - 1), s.coefficients(j));
    for (std::size_t i = 0; i < s.basis_a.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        EXPECT_NEAR(std::abs(s.basis_a[i].inner(s.basis_a[j])), 0.0, 1e-9);
        EXPECT_NEAR(std::abs(s.basis_b[i].inner(s.basis_b[j])), 0.0, 1e-9);
      }
    }
  }
}

TEST(PartialTrace, Cases) {
  const auto product = BipartiteState::product(ket2(1.0, 2.0), ket2(3.0, -1.0));
  EXPECT_NEAR(partial_trace(product, Subsystem::A).purity(), 1.0, 1e-12);
  EXPECT_NEAR(partial_trace(product, Subsystem::B).purity(), 1.0, 1e-12);

  const DensityOperator singlet_a = partial_trace(BipartiteState(singlet_amplitudes()), Subsystem::A);
  EXPECT_LE(testing::max_abs_diff(singlet_a.matrix(), 0.5 * Matrix::Identity(2, 2)), 1e-12);

  EXPECT_THROW(partial_trace(product, static_cast<Subsystem>(7)), ValidationError);
}

TEST(PartialTrace, BothSidesShareNonzeroSpectrum) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const BipartiteState psi = random_bipartite(2, 4, rng);
    auto a = testing::oracle_eigenvalues(partial_trace(psi, Subsystem::A).matrix());
    auto b = testing::oracle_eigenvalues(partial_trace(psi, Subsystem::B).matrix());
    std::sort(a.rbegin(), a.rend());
    std::sort(b.rbegin(), b.rend());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
    for (std::size_t i = a.size(); i < b.size(); ++i) EXPECT_NEAR(b[i], 0.0, 1e-10);

    const auto s = schmidt(psi);
    for (Eigen::Index j = 0; j < s.rank(); ++j) {
      EXPECT_NEAR(s.coefficients(j) * s.coefficients(j), a[static_cast<std::size_t>(j)], 1e-10);
    }
  }
}

TEST(Entropy, Anchors) {
  EXPECT_NEAR(entanglement_entropy(BipartiteState::product(Ket::basis(3, 1), ket2(1.0, 1.0))), 0.0, 1e-12);
  EXPECT_NEAR(entanglement_entropy(BipartiteState(singlet_amplitudes())), 1.0, 1e-12);
  for (Eigen::Index n = 2; n <= 5; ++n) {
    const Matrix b = Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(entanglement_entropy(BipartiteState(b)), std::log2(static_cast<double>(n)), 1e-12);
  }
}

TEST(Entropy, EqualsVonNeumannEntropyOfReducedState) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const BipartiteState psi = random_bipartite(3, 2, rng);
    double expected = 0.0;
    for (const double p : testing::oracle_eigenvalues(testing::oracle_reduced_a(psi.amplitudes()))) {
      if (p > 0.0) expected -= p * std::log2(p);
    }
    const double e = entanglement_entropy(psi);
    EXPECT_NEAR(e, expected, 1e-9);
    EXPECT_GE(e, -1e-12);
    EXPECT_LE(e, 1.0 + 1e-12);
  }
}

TEST(Bloch, Anchors) {
  EXPECT_LE(testing::max_abs_diff(bloch_to_density({}).matrix(), 0.5 * Matrix::Identity(2, 2)), 1e-15);
  const DensityOperator up = bloch_to_density({Eigen::Vector3d(0, 0, 1)});
  EXPECT_LE(testing::max_abs_diff(up.matrix(), Ket::basis(2, 0).projector()), 1e-15);
  EXPECT_THROW(bloch_to_density({Eigen::Vector3d(0.8, 0.8, 0.0)}), ValidationError);
  EXPECT_THROW(density_to_bloch(DensityOperator::maximally_mixed(3)), DimensionError);
}

TEST(Bloch, RoundTripAndPurity) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Vector3d dir(normal(rng), normal(rng), normal(rng));
    dir.normalize();
    const bool unit = trial % 2 == 0;
    const BlochVector in{unit ? dir : Eigen::Vector3d(dir * uniform(rng) * 0.99)};
    const DensityOperator rho = bloch_to_density(in);
    const BlochVector out = density_to_bloch(rho);
    EXPECT_LE((out.a - in.a).norm(), 1e-12);
    if (unit) {
      EXPECT_NEAR(out.a.norm(), 1.0, 1e-12);
      EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
    } else {
      EXPECT_LT(rho.purity(), 1.0 - 1e-6);
    }
  }
}

TEST(HermInvSqrt, Cases) {
  EXPECT_LE(testing::max_abs_diff(herm_inv_sqrt(Matrix::Identity(3, 3)), Matrix::Identity(3, 3)), 1e-15);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 4.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 0.5;
  EXPECT_LE(testing::max_abs_diff(herm_inv_sqrt(d, 1e-12), expected), 1e-15);

  // Trine frame operator: sum of the three projectors is (3/2) I.
  EXPECT_LE(testing::max_abs_diff(herm_inv_sqrt(1.5 * Matrix::Identity(2, 2)),
                                  std::sqrt(2.0 / 3.0) * Matrix::Identity(2, 2)),
            1e-15);

  Matrix skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  EXPECT_THROW(herm_inv_sqrt(skew), ValidationError);
}

TEST(HermInvSqrt, SandwichIsSupportProjector) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    // Rank-2 PSD operator in dimension 4.
    const Vector u = random_ket(4, rng).amplitudes();
    const Vector v = random_ket(4, rng).amplitudes();
    const Matrix op = 2.0 * u * u.adjoint() + 0.5 * v * v.adjoint();
    const Matrix r = herm_inv_sqrt(op);
    const Matrix p = r * op * r;
    EXPECT_LE(testing::max_abs_diff(p * p, p), 1e-10);
    EXPECT_NEAR(p.trace().real(), 2.0, 1e-10);
    EXPECT_LE((p * u - u).norm(), 1e-10);
  }
}

}  // namespace
}  // namespace qsd
