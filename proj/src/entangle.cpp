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

#include "qsd/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsd/error.hpp"

namespace qsd {

namespace {

Complex fourier_phase(Eigen::Index j, Eigen::Index k, Eigen::Index n) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n));
}

void check_orthonormal(std::span<const Ket> basis, Eigen::Index count, Eigen::Index dim) {
  if (static_cast<Eigen::Index>(basis.size()) != count) {
    throw ValidationError("target basis needs " + std::to_string(count) + " states");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].dim() != dim) throw DimensionError("target basis has the wrong dimension");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(basis[i].inner(basis[j])) > kDefaultTol) {
        throw ValidationError("target basis is not orthonormal");
      }
    }
  }
}

}  // namespace

Matrix orthogonaliser(std::span<const Ket> x_states, double success, std::span<const Ket> target_basis) {
  if (target_basis.size() != x_states.size()) {
    throw ValidationError("need one target state per x-state");
  }
  if (!(success >= 0.0)) throw ValidationError("success probability must be non-negative");
  const ReciprocalBasis reciprocal = reciprocal_states(x_states);
  const Eigen::Index d = x_states.front().dim();
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < x_states.size(); ++k) {
    const Ket& perp = reciprocal.states[k];
    const Complex overlap = perp.inner(x_states[k]);
    out += (std::sqrt(success) / overlap) * target_basis[k].amplitudes() * perp.amplitudes().adjoint();
  }
  return out;
}

ConcentrationPlan build_plan(const BipartiteState& psi, std::optional<std::vector<Ket>> target_basis) {
  ConcentrationPlan plan;
  plan.schmidt = schmidt(psi);
  const Eigen::Index n = plan.schmidt.rank();
  if (n < std::min(psi.dim_a(), psi.dim_b())) {
    throw ValidationError("Schmidt rank " + std::to_string(n) + " is below min(dA, dB) = " +
                          std::to_string(std::min(psi.dim_a(), psi.dim_b())));
  }
  plan.rank = n;
  const RealVector& c = plan.schmidt.coefficients;

  for (Eigen::Index k = 1; k <= n; ++k) {
    Vector x = Vector::Zero(psi.dim_a());
    Vector y = Vector::Zero(psi.dim_b());
    for (Eigen::Index j = 1; j <= n; ++j) {
      const Complex phase = fourier_phase(j, k, n);
      x += c(j - 1) * phase * plan.schmidt.basis_a[static_cast<std::size_t>(j - 1)].amplitudes();
      y += std::conj(phase) * plan.schmidt.basis_b[static_cast<std::size_t>(j - 1)].amplitudes();
    }
    plan.x_states.push_back(Ket::normalized(x));
    plan.y_basis.push_back(Ket::normalized(y / std::sqrt(static_cast<double>(n))));
  }

  if (target_basis) {
    check_orthonormal(*target_basis, n, psi.dim_a());
    plan.target_basis = std::move(*target_basis);
  } else {
    plan.target_basis = plan.schmidt.basis_a;
  }

  plan.success_prob = static_cast<double>(n) * c.cwiseAbs2().minCoeff();
  plan.orthogonaliser = orthogonaliser(plan.x_states, plan.success_prob, plan.target_basis);
  return plan;
}

ConcentrationResult concentrate(const ConcentrationPlan& plan, const BipartiteState& psi) {
  if (plan.orthogonaliser.cols() != psi.dim_a()) {
    throw DimensionError("plan does not act on this state");
  }
  const Matrix filtered = plan.orthogonaliser * psi.amplitudes();
  const double p = filtered.squaredNorm();
  if (p < kImpossibleOutcome) {
    throw ImpossibleOutcomeError("concentration cannot succeed on this state");
  }
  return {BipartiteState(filtered / std::sqrt(p)), p};
}

ConcentrationResult concentrate(const BipartiteState& psi) { return concentrate(build_plan(psi), psi); }

OrthogonaliserReport verify_orthogonaliser(const ConcentrationPlan& plan, double tol) {
  OrthogonaliserReport report;
  bool ok = true;
  for (std::size_t k = 0; k < plan.x_states.size(); ++k) {
    const auto post = post_state(plan.orthogonaliser, DensityOperator::pure(plan.x_states[k]));
    const Vector& phi = plan.target_basis[k].amplitudes();
    const double fidelity = phi.dot(post.state.matrix() * phi).real();
    report.fidelities.push_back(fidelity);
    report.probabilities.push_back(post.probability);
    ok = ok && fidelity >= 1.0 - tol && std::abs(post.probability - plan.success_prob) <= tol;
  }
  const Eigen::Index d = plan.orthogonaliser.cols();
  const Matrix slack = Matrix::Identity(d, d) - plan.orthogonaliser.adjoint() * plan.orthogonaliser;
  report.failure_margin = min_eigenvalue(0.5 * (slack + slack.adjoint()));
  report.passed = ok && report.failure_margin >= -tol;
  return report;
}

}  // namespace qsd
