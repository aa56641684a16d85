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

#include "qsd/minerror.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsd/error.hpp"

namespace qsd {

namespace {

constexpr double kPi = std::numbers::pi;

void check_prior(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw ValidationError("prior must lie in [0, 1]");
  }
}

void check_overlap(double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw ValidationError("overlap modulus must lie in [0, 1]");
  }
}

// Every assigned state index is in range and used at most once.
void check_injective(const Assignment& assignment, std::size_t states) {
  std::vector<bool> used(states, false);
  for (const auto& a : assignment) {
    if (!a) continue;
    if (*a >= states) throw ValidationError("assignment names a state outside the ensemble");
    if (used[*a]) throw ValidationError("assignment is not injective");
    used[*a] = true;
  }
}

Assignment resolve_assignment(const Assignment& assignment, const Ensemble& ens, const Povm& povm) {
  if (povm.size() < ens.size()) {
    throw ValidationError("POVM has fewer outcomes than the ensemble has states");
  }
  if (assignment.empty()) return index_assignment(povm.size(), ens.size());
  if (assignment.size() != povm.size()) {
    throw ValidationError("assignment needs one entry per POVM outcome");
  }
  return assignment;
}

// Principal eigenvector of a rank-one density operator.
Ket pure_ket(const DensityOperator& rho) {
  if (std::abs(rho.purity() - 1.0) > 1e-9) {
    throw ValidationError("state is not pure");
  }
  const auto eig = hermitian_eigen(rho.matrix());
  return Ket::normalized(eig.vectors.col(eig.values.size() - 1));
}

}  // namespace

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(std::vector<DensityOperator> states, std::vector<double> priors, double tol)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.empty()) throw ValidationError("ensemble is empty");
  if (states_.size() != priors_.size()) {
    throw ValidationError("ensemble needs one prior per state");
  }
  double total = 0.0;
  for (const double p : priors_) {
    if (p < 0.0) throw ValidationError("priors must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > tol) {
    throw ValidationError("priors sum to " + std::to_string(total) + ", not 1");
  }
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) throw DimensionError("ensemble states differ in dimension");
  }
}

Ensemble Ensemble::from_kets(std::span<const Ket> kets, std::vector<double> priors) {
  std::vector<DensityOperator> states;
  states.reserve(kets.size());
  for (const Ket& k : kets) states.push_back(DensityOperator::pure(k));
  return Ensemble(std::move(states), std::move(priors));
}

Ensemble Ensemble::uniform(std::span<const Ket> kets) {
  return from_kets(kets, std::vector<double>(kets.size(), 1.0 / static_cast<double>(kets.size())));
}

Assignment index_assignment(std::size_t outcomes, std::size_t states) {
  Assignment out(outcomes);
  for (std::size_t k = 0; k < outcomes && k < states; ++k) out[k] = k;
  return out;
}

// ---------------------------------------------------------------------------
// TwoStateFamily

TwoStateFamily::TwoStateFamily(double theta_, double eta_plus_)
    : TwoStateFamily(theta_, eta_plus_, Ket::basis(2, 0), Ket::basis(2, 1)) {}

TwoStateFamily::TwoStateFamily(double theta_, double eta_plus_, Ket plus_, Ket minus_)
    : theta(theta_), eta_plus(eta_plus_), plus(std::move(plus_)), minus(std::move(minus_)) {
  if (!(theta >= 0.0 && theta <= kPi / 4.0 + 1e-12)) {
    throw ValidationError("theta must lie in [0, pi/4]");
  }
  check_prior(eta_plus);
  if (plus.dim() != minus.dim() || std::abs(plus.inner(minus)) > kDefaultTol) {
    throw ValidationError("family basis must be an orthonormal pair");
  }
}

double TwoStateFamily::overlap() const { return std::cos(2.0 * theta); }

double TwoStateFamily::xi() const {
  const double c = overlap();
  if (std::abs(c) < 1e-15) return 0.0;
  const double d = delta();
  return d * c / std::sqrt(1.0 + c * c * (d * d - 1.0));
}

Ket TwoStateFamily::psi_plus() const {
  return Ket::normalized(std::cos(theta) * plus.amplitudes() + std::sin(theta) * minus.amplitudes());
}

Ket TwoStateFamily::psi_minus() const {
  return Ket::normalized(std::cos(theta) * plus.amplitudes() - std::sin(theta) * minus.amplitudes());
}

Ensemble TwoStateFamily::ensemble() const {
  const std::array<Ket, 2> kets{psi_plus(), psi_minus()};
  return Ensemble::from_kets(kets, {eta_plus, eta_minus()});
}

// ---------------------------------------------------------------------------
// Error probability and cost

RealMatrix channel_matrix(const Ensemble& ens, const Povm& povm) {
  if (ens.dim() != povm.dim()) throw DimensionError("ensemble and POVM dimensions differ");
  RealMatrix out(static_cast<Eigen::Index>(ens.size()), static_cast<Eigen::Index>(povm.size()));
  for (std::size_t j = 0; j < ens.size(); ++j) {
    const auto probs = outcome_probs(povm, ens.states()[j]);
    for (std::size_t k = 0; k < probs.size(); ++k) {
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = probs[k];
    }
  }
  return out;
}

double error_probability(const Ensemble& ens, const Povm& povm, const Assignment& assignment) {
  const Assignment resolved = resolve_assignment(assignment, ens, povm);
  check_injective(resolved, ens.size());
  const RealMatrix channel = channel_matrix(ens, povm);
  double correct = 0.0;
  for (std::size_t k = 0; k < resolved.size(); ++k) {
    if (!resolved[k]) continue;
    const std::size_t j = *resolved[k];
    correct += ens.priors()[j] * channel(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  }
  return std::clamp(1.0 - correct, 0.0, 1.0);
}

double bayes_cost(const Ensemble& ens, const Povm& povm, const CostMatrix& cost) {
  if (cost.rows() != static_cast<Eigen::Index>(povm.size()) ||
      cost.cols() != static_cast<Eigen::Index>(ens.size())) {
    throw DimensionError("cost matrix must be (outcomes x states)");
  }
  const RealMatrix channel = channel_matrix(ens, povm);
  double total = 0.0;
  for (Eigen::Index j = 0; j < channel.rows(); ++j) {
    for (Eigen::Index k = 0; k < channel.cols(); ++k) {
      total += ens.priors()[static_cast<std::size_t>(j)] * cost(k, j) * channel(j, k);
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Helstrom

double helstrom_bound(double eta_plus, double overlap) {
  check_prior(eta_plus);
  check_overlap(overlap);
  const double eta_minus = 1.0 - eta_plus;
  const double radicand = 1.0 - 4.0 * eta_plus * eta_minus * overlap * overlap;
  return 0.5 * (1.0 - std::sqrt(std::max(radicand, 0.0)));
}

Povm helstrom_measurement(const TwoStateFamily& family) {
  const double xi = family.xi();
  const double a = std::sqrt(std::max(1.0 + xi, 0.0));
  const double b = std::sqrt(std::max(1.0 - xi, 0.0));
  const Vector& p = family.plus.amplitudes();
  const Vector& m = family.minus.amplitudes();
  const Ket omega_plus = Ket::normalized((a * p + b * m) / std::sqrt(2.0));
  const Ket omega_minus = Ket::normalized((b * p - a * m) / std::sqrt(2.0));

  std::vector<Matrix> elements{omega_plus.projector(), omega_minus.projector()};
  const Eigen::Index d = p.size();
  if (d > 2) {
    // Outside the span of |+>,|-> neither state has support; fold it into omega_+.
    elements[0] += Matrix::Identity(d, d) - family.plus.projector() - family.minus.projector();
  }
  return Povm(std::move(elements), {"+", "-"});
}

// ---------------------------------------------------------------------------
// Optimality conditions

OptimalityReport hykl_check(const Ensemble& ens, const Povm& povm, const Assignment& assignment,
                            double tol) {
  const Assignment resolved = resolve_assignment(assignment, ens, povm);
  for (const auto& a : resolved) {
    if (!a) throw ValidationError("optimality check needs every outcome assigned to a state");
    if (*a >= ens.size()) throw ValidationError("assignment names a state outside the ensemble");
  }
  const Eigen::Index d = ens.dim();
  const auto k_count = static_cast<Eigen::Index>(povm.size());

  auto weighted = [&](std::size_t k) -> Matrix {
    const std::size_t j = *resolved[k];
    return ens.priors()[j] * ens.states()[j].matrix();
  };

  OptimalityReport report;
  report.gamma = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < povm.size(); ++k) report.gamma += povm[k] * weighted(k);
  report.gamma_hermiticity = hermiticity_defect(report.gamma);

  report.pairwise_residuals = RealMatrix::Zero(k_count, k_count);
  for (std::size_t j = 0; j < povm.size(); ++j) {
    for (std::size_t k = 0; k < povm.size(); ++k) {
      const Matrix r = povm[j] * (weighted(j) - weighted(k)) * povm[k];
      report.pairwise_residuals(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = r.norm();
    }
  }

  const Matrix gamma_h = 0.5 * (report.gamma + report.gamma.adjoint());
  report.psd_margins.resize(static_cast<Eigen::Index>(ens.size()));
  for (std::size_t j = 0; j < ens.size(); ++j) {
    const Matrix diff = gamma_h - ens.priors()[j] * ens.states()[j].matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
    report.psd_margins(static_cast<Eigen::Index>(j)) = solver.eigenvalues()(0);
  }

  report.passed = report.gamma_hermiticity <= tol && report.pairwise_residuals.maxCoeff() <= tol &&
                  report.psd_margins.minCoeff() >= -tol;
  return report;
}

// ---------------------------------------------------------------------------
// Symmetric states and the square-root measurement

SymmetricFamily make_symmetric(std::span<const Complex> coefficients, double tol) {
  const auto n = static_cast<Eigen::Index>(coefficients.size());
  if (n < 1) throw ValidationError("symmetric family needs at least one coefficient");
  double norm2 = 0.0;
  for (const Complex& c : coefficients) norm2 += std::norm(c);
  if (std::abs(norm2 - 1.0) > tol) {
    throw ValidationError("coefficients are not normalised (sum |c_k|^2 = " + std::to_string(norm2) + ")");
  }

  SymmetricFamily fam;
  fam.coefficients.assign(coefficients.begin(), coefficients.end());
  fam.generator = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    fam.generator(k - 1, k - 1) = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  }
  for (Eigen::Index j = 1; j <= n; ++j) {
    Vector v(n);
    for (Eigen::Index k = 1; k <= n; ++k) {
      const double phase = 2.0 * kPi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      v(k - 1) = coefficients[static_cast<std::size_t>(k - 1)] * std::polar(1.0, phase);
    }
    fam.states.push_back(Ket::normalized(v));
  }
  return fam;
}

Povm square_root_measurement(std::span<const Ket> states) {
  if (states.empty()) throw ValidationError("square-root measurement needs at least one state");
  const Eigen::Index d = states.front().dim();
  Matrix phi = Matrix::Zero(d, d);
  for (const Ket& s : states) {
    if (s.dim() != d) throw DimensionError("states differ in dimension");
    phi += s.projector();
  }
  const Matrix inv_root = herm_inv_sqrt(phi);

  std::vector<Matrix> elements;
  std::vector<std::string> labels;
  Matrix support = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < states.size(); ++j) {
    const Vector omega = inv_root * states[j].amplitudes();
    elements.push_back(omega * omega.adjoint());
    support += elements.back();
    labels.push_back(std::to_string(j));
  }
  const Matrix kernel = Matrix::Identity(d, d) - support;
  if (kernel.cwiseAbs().maxCoeff() > kDefaultTol) {
    elements.push_back(0.5 * (kernel + kernel.adjoint()));
    labels.push_back("null");
  }
  return Povm(std::move(elements), std::move(labels));
}

Povm square_root_measurement(std::span<const Ket> states, std::span<const double> priors) {
  if (priors.size() != states.size()) throw ValidationError("need one prior per state");
  for (const double p : priors) {
    if (std::abs(p - 1.0 / static_cast<double>(states.size())) > kDefaultTol) {
      throw ValidationError("square-root measurement is only defined here for uniform priors");
    }
  }
  return square_root_measurement(states);
}

double srm_error(std::span<const Ket> states) {
  if (states.empty()) throw ValidationError("square-root measurement needs at least one state");
  const Eigen::Index d = states.front().dim();
  Matrix phi = Matrix::Zero(d, d);
  for (const Ket& s : states) {
    if (s.dim() != d) throw DimensionError("states differ in dimension");
    phi += s.projector();
  }
  const Matrix inv_root = herm_inv_sqrt(phi);
  double total = 0.0;
  for (const Ket& s : states) total += std::norm(s.amplitudes().dot(inv_root * s.amplitudes()));
  return 1.0 - total / static_cast<double>(states.size());
}

std::array<Ket, 3> trine_states() {
  const double h = std::sqrt(3.0) / 2.0;
  Vector v1(2), v2(2), v3(2);
  v1 << 1.0, 0.0;
  v2 << -0.5, h;
  v3 << -0.5, -h;
  return {Ket(v1), Ket(v2), Ket(v3)};
}

// ---------------------------------------------------------------------------
// Brute-force oracle

BruteForceResult brute_force_two_state(const Ensemble& ens, double resolution) {
  if (ens.size() != 2) throw ValidationError("brute-force search needs exactly two states");
  if (!(resolution > 0.0)) throw ValidationError("resolution must be positive");
  const Ket first = pure_ket(ens.states()[0]);
  const Ket second = pure_ket(ens.states()[1]);

  // Rephase so that both states have real coordinates in the basis {e1, e2}.
  const Complex ov = first.inner(second);
  const double ov_abs = std::abs(ov);
  if (ov_abs > 1.0 - 1e-12) {
    throw ValidationError("states do not span a 2-dimensional real subspace");
  }
  const Complex phase = ov_abs > 0.0 ? ov / ov_abs : Complex(1.0);
  const Vector e1 = first.amplitudes() * phase;
  const Vector e2 = (second.amplitudes() - ov_abs * e1).normalized();
  const double s1 = ov_abs;                              // <e1|second>
  const double s2 = std::sqrt(std::max(0.0, 1.0 - s1 * s1));  // <e2|second>
  const double eta0 = ens.priors()[0];
  const double eta1 = ens.priors()[1];

  // Outcome 0: cos(phi) e1 + sin(phi) e2, outcome 1: -sin(phi) e1 + cos(phi) e2.
  auto error_at = [&](double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double p0 = c * c;
    const double amp1 = -s * s1 + c * s2;
    return 1.0 - eta0 * p0 - eta1 * amp1 * amp1;
  };

  const auto steps = static_cast<long>(std::ceil(kPi / resolution));
  double best = error_at(0.0);
  double best_angle = 0.0;
  for (long i = 1; i < steps; ++i) {
    const double phi = static_cast<double>(i) * resolution;
    const double e = error_at(phi);
    if (e < best) {
      best = e;
      best_angle = phi;
    }
  }

  const Vector w0 = std::cos(best_angle) * e1 + std::sin(best_angle) * e2;
  const Vector w1 = -std::sin(best_angle) * e1 + std::cos(best_angle) * e2;
  const Eigen::Index d = e1.size();
  std::vector<Matrix> elements{w0 * w0.adjoint(), w1 * w1.adjoint()};
  elements[0] = Matrix::Identity(d, d) - elements[1];
  return {std::max(best, 0.0), best_angle, Povm(std::move(elements))};
}

}  // namespace qsd
