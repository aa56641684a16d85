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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsd/error.hpp"
#include "qsd/minerror.hpp"
#include "qsd/unambiguous.hpp"
#include "test_util.hpp"

namespace qsd {
namespace {

using testing::max_abs_diff;

Povm trine_povm() { return square_root_measurement(trine_states()); }

Povm idp_povm(double theta) {
  const TwoStateFamily family(theta, 0.5);
  const std::array<Ket, 2> states{family.psi_plus(), family.psi_minus()};
  const double p = idp_success(family.overlap());
  const std::array<double, 2> success{p, p};
  return unambiguous_povm(states, success).as_povm();
}

// K Kraus operators on dimension d cut from the first d columns of a Haar unitary.
KrausSet random_kraus(Eigen::Index d, Eigen::Index count, std::mt19937_64& rng) {
  const Matrix u = testing::random_unitary(d * count, rng);
  std::vector<Matrix> ops;
  for (Eigen::Index k = 0; k < count; ++k) ops.push_back(u.block(k * d, 0, d, d));
  return KrausSet(ops);
}

TEST(Povm, ValidationRejectsBrokenInvariants) {
  std::vector<Matrix> elements{Ket::basis(2, 0).projector(), Ket::basis(2, 1).projector()};
  EXPECT_NO_THROW(Povm{elements});
  auto scaled = elements;
  scaled[0] *= 1.01;
  EXPECT_THROW(Povm{scaled}, ValidationError);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = 1.0;
  Matrix compensate = Matrix::Zero(2, 2);
  compensate(0, 0) = -0.5;
  EXPECT_THROW((Povm{{negative, compensate}}), ValidationError);

  EXPECT_THROW((Povm{{Matrix::Identity(2, 2), Matrix::Zero(3, 3)}}), DimensionError);
  EXPECT_THROW(Povm{std::vector<Matrix>{}}, ValidationError);
  EXPECT_THROW((Povm{elements, {"only-one"}}), ValidationError);
}

TEST(Povm, ValidationAcceptsConstructedMeasurementsAndRejectsScaledElements) {
  std::vector<Povm> built{trine_povm(), idp_povm(std::numbers::pi / 6.0),
                          helstrom_measurement(TwoStateFamily(0.3, 0.8))};
  for (const Povm& p : built) {
    EXPECT_NO_THROW(validate_povm(p.elements()));
    EXPECT_LE(p.completeness_residual(), 1e-9);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k].norm() < 1e-6) continue;
      auto scaled = p.elements();
      scaled[k] *= 1.01;
      EXPECT_THROW(validate_povm(scaled), ValidationError);
    }
  }
}

TEST(OutcomeProbs, ProjectiveOnEigenstate) {
  const std::array<Ket, 3> basis{Ket::basis(3, 0), Ket::basis(3, 1), Ket::basis(3, 2)};
  const auto probs = outcome_probs(Povm::projective(basis), basis[1]);
  EXPECT_NEAR(probs[0], 0.0, 1e-15);
  EXPECT_NEAR(probs[1], 1.0, 1e-15);
  EXPECT_NEAR(probs[2], 0.0, 1e-15);
}

TEST(OutcomeProbs, TrineOnFirstState) {
  const auto trine = trine_states();
  const auto probs = outcome_probs(trine_povm(), trine[0]);
  EXPECT_NEAR(probs[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(probs[1], 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(probs[2], 1.0 / 6.0, 1e-12);
}

TEST(OutcomeProbs, MaximallyMixedGivesNormalisedTraces) {
  const Povm p = idp_povm(0.4);
  const auto probs = outcome_probs(p, DensityOperator::maximally_mixed(2));
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(probs[k], p[k].trace().real() / 2.0, 1e-12);
  EXPECT_THROW(outcome_probs(p, DensityOperator::maximally_mixed(3)), DimensionError);
}

TEST(OutcomeProbs, KetAndDensityFormsAgreeAndSumToOne) {
  std::mt19937_64 rng(31);
  const Povm p = trine_povm();
  for (int trial = 0; trial < 20; ++trial) {
    const Ket psi = random_ket(2, rng);
    const auto a = outcome_probs(p, psi);
    const auto b = outcome_probs(p, DensityOperator::pure(psi));
    double total = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_NEAR(a[k], b[k], 1e-12);
      total += a[k];
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(KrausFromPovm, ProjectorsAreTheirOwnKrausOperators) {
  const std::array<Ket, 2> basis{testing::ket2(1.0, 1.0), testing::ket2(1.0, -1.0)};
  const KrausSet k = kraus_from_povm(Povm::projective(basis));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_LE(max_abs_diff(k[i], basis[i].projector()), 1e-12);
    EXPECT_LE(max_abs_diff(k[i] * k[i], k[i]), 1e-12);
  }
}

TEST(KrausFromPovm, SingleElementWithUnitary) {
  std::mt19937_64 rng(37);
  const Matrix u = testing::random_unitary(3, rng);
  const std::array<Matrix, 1> us{u};
  const KrausSet k = kraus_from_povm(Povm({Matrix::Identity(3, 3)}), us);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_LE(max_abs_diff(k[0], u), 1e-12);

  const std::array<Matrix, 1> bad{2.0 * u};
  EXPECT_THROW(kraus_from_povm(Povm({Matrix::Identity(3, 3)}), bad), ValidationError);
}

TEST(KrausFromPovm, LiftReproducesPovmAndProbabilities) {
  std::mt19937_64 rng(41);
  for (const Povm& p : {trine_povm(), idp_povm(0.3)}) {
    std::vector<Matrix> us;
    for (std::size_t k = 0; k < p.size(); ++k) us.push_back(testing::random_unitary(2, rng));
    const KrausSet lift = kraus_from_povm(p, us);
    for (int trial = 0; trial < 20; ++trial) {
      const DensityOperator rho = random_density(2, rng);
      const auto probs = outcome_probs(p, rho);
      for (std::size_t k = 0; k < p.size(); ++k) {
        EXPECT_LE(max_abs_diff(lift[k].adjoint() * lift[k], p[k]), 1e-9);
        const double direct = (lift[k] * rho.matrix() * lift[k].adjoint()).trace().real();
        EXPECT_NEAR(probs[k], direct, 1e-9);
      }
    }
  }
}

TEST(PostState, EigenstateAndOrthogonalProjector) {
  const DensityOperator rho = DensityOperator::pure(Ket::basis(2, 0));
  const PostMeasurement same = post_state(Ket::basis(2, 0).projector(), rho);
  EXPECT_NEAR(same.probability, 1.0, 1e-15);
  EXPECT_LE(max_abs_diff(same.state.matrix(), rho.matrix()), 1e-15);
  EXPECT_THROW(post_state(Ket::basis(2, 1).projector(), rho), ImpossibleOutcomeError);
}

TEST(PostState, IdpFailureMapsBothStatesToOne) {
  const double theta = std::numbers::pi / 8.0;
  const TwoStateFamily family(theta, 0.5);
  const Povm p = idp_povm(theta);
  const KrausSet lift = kraus_from_povm(p);
  const Matrix& failure = lift[2];
  const auto plus = post_state(failure, DensityOperator::pure(family.psi_plus()));
  const auto minus = post_state(failure, DensityOperator::pure(family.psi_minus()));
  EXPECT_LE(max_abs_diff(plus.state.matrix(), minus.state.matrix()), 1e-9);
  EXPECT_NEAR(plus.probability, family.overlap(), 1e-9);
  EXPECT_NEAR(minus.probability, family.overlap(), 1e-9);
}

TEST(PostState, ProbabilityMatchesTraceFormula) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const KrausSet k = random_kraus(3, 2, rng);
    const DensityOperator rho = random_density(3, rng);
    const PostMeasurement out = post_state(k[0], rho);
    EXPECT_NEAR(out.probability, (rho.matrix() * k[0].adjoint() * k[0]).trace().real(), 1e-12);
    EXPECT_NEAR(out.state.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(out.state.eigenvalues()(0), -1e-9);
  }
}

TEST(UnreadUpdate, ProjectiveDephasesInItsBasis) {
  std::mt19937_64 rng(47);
  const DensityOperator rho = random_density(3, rng);
  const std::array<Ket, 3> basis{Ket::basis(3, 0), Ket::basis(3, 1), Ket::basis(3, 2)};
  const DensityOperator out = unread_update(kraus_from_povm(Povm::projective(basis)), rho);
  const Matrix expected = rho.matrix().diagonal().asDiagonal();
  EXPECT_LE(max_abs_diff(out.matrix(), expected), 1e-12);
}

TEST(UnreadUpdate, SingleUnitary) {
  std::mt19937_64 rng(53);
  const DensityOperator rho = random_density(2, rng);
  const Matrix u = testing::random_unitary(2, rng);
  const DensityOperator out = unread_update(KrausSet({u}), rho);
  EXPECT_LE(max_abs_diff(out.matrix(), u * rho.matrix() * u.adjoint()), 1e-12);
}

TEST(UnreadUpdate, EqualsWeightedMixtureOfPostStates) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    const KrausSet k = random_kraus(3, 3, rng);
    const DensityOperator rho = random_density(3, rng);
    Matrix oracle = Matrix::Zero(3, 3);
    for (const Matrix& a : k.operators()) {
      const PostMeasurement pm = post_state(a, rho);
      oracle += pm.probability * pm.state.matrix();
    }
    const DensityOperator out = unread_update(k, rho);
    EXPECT_LE(max_abs_diff(out.matrix(), oracle), 1e-12);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(out.eigenvalues()(0), -1e-9);
  }
}

TEST(KrausSet, RejectsNonTracePreserving) {
  EXPECT_THROW(KrausSet({0.5 * Matrix::Identity(2, 2)}), ValidationError);
  Matrix rectangular = Matrix::Zero(3, 2);
  rectangular(0, 0) = 1.0;
  rectangular(1, 1) = 1.0;
  EXPECT_NO_THROW(KrausSet({rectangular}));
}

TEST(Naimark, ProjectiveDilationRecordsOutcome) {
  const std::array<Ket, 2> basis{Ket::basis(2, 0), Ket::basis(2, 1)};
  const Povm p = Povm::projective(basis);
  const NaimarkDilation dil = naimark_dilate(p);
  EXPECT_EQ(dil.ancilla_dim, 2);
  EXPECT_TRUE(is_unitary(dil.joint_unitary));
  std::mt19937_64 rng(61);
  const DensityOperator rho = random_density(2, rng);
  const auto a = dil.probabilities(rho);
  const auto b = outcome_probs(p, rho);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
}

TEST(Naimark, RoundTripOnRandomStates) {
  std::mt19937_64 rng(67);
  for (const Povm& p : {trine_povm(), idp_povm(0.25)}) {
    const NaimarkDilation dil = naimark_dilate(p);
    EXPECT_EQ(dil.ancilla_dim, static_cast<Eigen::Index>(p.size()));
    EXPECT_TRUE(is_unitary(dil.joint_unitary, 1e-10));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const DensityOperator rho = random_density(2, rng);
      const auto a = dil.probabilities(rho);
      const auto b = outcome_probs(p, rho);
      for (std::size_t k = 0; k < p.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    EXPECT_LE(worst, 1e-9);
  }
}

TEST(Naimark, IdpInconclusiveProbabilityIsOverlap) {
  const double theta = 0.35;
  const TwoStateFamily family(theta, 0.5);
  const NaimarkDilation dil = naimark_dilate(idp_povm(theta));
  for (const Ket& psi : {family.psi_plus(), family.psi_minus()}) {
    EXPECT_NEAR(dil.probabilities(DensityOperator::pure(psi))[2], std::cos(2.0 * theta), 1e-9);
  }
}

TEST(Evolve, ZeroAndCommutingHamiltonians) {
  std::mt19937_64 rng(71);
  const DensityOperator rho = random_density(3, rng);
  EXPECT_LE(max_abs_diff(evolve(rho, Matrix::Zero(3, 3), 2.5).matrix(), rho.matrix()), 1e-12);

  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  const Matrix commuting = eig.vectors * RealVector::LinSpaced(3, -1.0, 2.0).asDiagonal() * eig.vectors.adjoint();
  EXPECT_LE(max_abs_diff(evolve(rho, commuting, 1.7).matrix(), rho.matrix()), 1e-12);

  Matrix not_hermitian = Matrix::Zero(3, 3);
  not_hermitian(0, 1) = 1.0;
  EXPECT_THROW(evolve(rho, not_hermitian, 1.0), ValidationError);
}

TEST(Evolve, SigmaZHasPeriodPi) {
  std::mt19937_64 rng(73);
  const DensityOperator rho = random_density(2, rng);
  EXPECT_LE(max_abs_diff(evolve(rho, pauli_z(), std::numbers::pi).matrix(), rho.matrix()), 1e-12);
  const BlochVector before = density_to_bloch(rho);
  const BlochVector quarter = density_to_bloch(evolve(rho, pauli_z(), std::numbers::pi / 4.0));
  // Rotation by 2t about z.
  EXPECT_NEAR(quarter.a(0), -before.a(1), 1e-12);
  EXPECT_NEAR(quarter.a(1), before.a(0), 1e-12);
  EXPECT_NEAR(quarter.a(2), before.a(2), 1e-12);
}

TEST(Evolve, MatchesMatrixExponentialAndPreservesSpectrum) {
  using namespace std::complex_literals;
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityOperator rho = random_density(4, rng);
    const Matrix g = testing::random_unitary(4, rng);
    const Matrix h = 0.5 * (g + g.adjoint());
    const double t = 0.37 * (trial + 1);
    const Matrix generator = (-1i * t) * h;
    const Matrix u = generator.exp();
    const DensityOperator out = evolve(rho, h, t);
    EXPECT_LE(max_abs_diff(out.matrix(), u * rho.matrix() * u.adjoint()), 1e-10);
    EXPECT_LE((out.eigenvalues() - rho.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace qsd
