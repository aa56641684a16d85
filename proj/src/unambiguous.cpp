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

#include "qsd/unambiguous.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsd/error.hpp"

namespace qsd {

namespace {

Matrix as_columns(std::span<const Ket> states) {
  if (states.empty()) throw ValidationError("state list is empty");
  const Eigen::Index d = states.front().dim();
  Matrix s(d, static_cast<Eigen::Index>(states.size()));
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (states[j].dim() != d) throw DimensionError("states differ in dimension");
    s.col(static_cast<Eigen::Index>(j)) = states[j].amplitudes();
  }
  return s;
}

void check_overlap(double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw ValidationError("overlap modulus must lie in [0, 1]");
  }
}

}  // namespace

double idp_bound(double overlap) {
  check_overlap(overlap);
  return overlap;
}

double idp_success(double overlap) { return 1.0 - idp_bound(overlap); }

bool linearly_independent(std::span<const Ket> states, double cutoff) {
  const Matrix s = as_columns(states);
  if (s.cols() > s.rows()) return false;
  return numerical_rank(s, cutoff) == s.cols();
}

ReciprocalBasis reciprocal_states(std::span<const Ket> states) {
  if (!linearly_independent(states)) {
    throw LinearDependenceError("states are linearly dependent; no reciprocal basis exists");
  }
  const Matrix s = as_columns(states);
  const Matrix gram = s.adjoint() * s;
  // Columns of S G^-1 are biorthogonal to the columns of S.
  const Matrix dual = s * gram.ldlt().solve(Matrix::Identity(gram.rows(), gram.cols()));
  ReciprocalBasis out;
  for (Eigen::Index j = 0; j < dual.cols(); ++j) {
    out.states.push_back(Ket::normalized(dual.col(j)).canonical());
  }
  return out;
}

Povm UnambiguousPovm::as_povm() const {
  std::vector<Matrix> elements = conclusive;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < conclusive.size(); ++j) labels.push_back(std::to_string(j));
  elements.push_back(inconclusive);
  labels.push_back("?");
  return Povm(std::move(elements), std::move(labels));
}

UnambiguousPovm unambiguous_povm(std::span<const Ket> states, std::span<const double> success,
                                 double tol) {
  if (success.size() != states.size()) {
    throw ValidationError("need one success probability per state");
  }
  for (const double p : success) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("success probabilities must lie in [0, 1]");
  }
  const ReciprocalBasis reciprocal = reciprocal_states(states);
  const Eigen::Index d = states.front().dim();

  UnambiguousPovm out;
  out.success.assign(success.begin(), success.end());
  out.inconclusive = Matrix::Identity(d, d);
  for (std::size_t j = 0; j < states.size(); ++j) {
    const Ket& r = reciprocal.states[j];
    const double weight = success[j] / std::norm(r.inner(states[j]));
    out.conclusive.push_back(weight * r.projector());
    out.inconclusive -= out.conclusive.back();
  }
  out.inconclusive = 0.5 * (out.inconclusive + out.inconclusive.adjoint());

  const double lowest = min_eigenvalue(out.inconclusive);
  if (lowest < -tol) {
    throw InfeasibleError("requested success probabilities are infeasible: inconclusive element has "
                          "eigenvalue " + std::to_string(lowest),
                          lowest);
  }
  return out;
}

SymmetricOptimum symmetric_unambiguous_optimum(const SymmetricFamily& family) {
  if (!linearly_independent(family.states)) {
    throw LinearDependenceError("symmetric family is linearly dependent");
  }
  double smallest = 1.0;
  for (const Complex& c : family.coefficients) smallest = std::min(smallest, std::norm(c));
  SymmetricOptimum out;
  out.success = static_cast<double>(family.size()) * smallest;
  out.inconclusive = 1.0 - out.success;
  return out;
}

std::vector<Ket> failure_posterior(std::span<const Ket> states, const UnambiguousPovm& povm) {
  const Matrix failure = herm_sqrt(povm.inconclusive);
  std::vector<Ket> out;
  out.reserve(states.size());
  for (std::size_t j = 0; j < states.size(); ++j) {
    const Vector v = failure * states[j].amplitudes();
    const double p = v.squaredNorm();
    if (p < kImpossibleOutcome) {
      throw ImpossibleOutcomeError("state " + std::to_string(j) + " never gives the inconclusive result");
    }
    out.push_back(Ket::normalized(v).canonical());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interferometer

Vector InterferometerModel::embed(const Ket& polarisation) const {
  if (polarisation.dim() != 2) throw DimensionError("polarisation ket must be a qubit");
  Vector v = Vector::Zero(4);
  v(kMainV) = polarisation[0];
  v(kMainH) = polarisation[1];
  return v;
}

Povm InterferometerModel::effective_povm() const {
  Matrix embedding = Matrix::Zero(4, 2);
  embedding(kMainV, 0) = 1.0;
  embedding(kMainH, 1) = 1.0;
  const Matrix u = network() * embedding;
  std::vector<Matrix> elements;
  for (const Matrix& detector : detectors) {
    Matrix e = u.adjoint() * detector * u;
    elements.push_back(0.5 * (e + e.adjoint()));
  }
  return Povm(std::move(elements), {"D+", "D-", "D?"});
}

InterferometerModel make_interferometer(double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi / 4.0 + 1e-12)) {
    throw ValidationError("theta must lie in (0, pi/4]");
  }
  using M = InterferometerModel;
  M model;
  model.theta = theta;
  model.transmission = std::sqrt(std::max(std::cos(2.0 * theta), 0.0)) / std::cos(theta);
  model.reflection = std::sqrt(std::max(1.0 - model.transmission * model.transmission, 0.0));

  const Matrix identity = Matrix::Identity(4, 4);
  Matrix swap_v = identity;
  swap_v(M::kMainV, M::kMainV) = 0.0;
  swap_v(M::kArmV, M::kArmV) = 0.0;
  swap_v(M::kMainV, M::kArmV) = 1.0;
  swap_v(M::kArmV, M::kMainV) = 1.0;
  model.first_splitter = swap_v;
  model.recombiner = swap_v;

  const double t = model.transmission;
  const double r = model.reflection;
  model.arm_splitter = identity;
  model.arm_splitter(M::kArmV, M::kArmV) = r;
  model.arm_splitter(M::kInconclusivePort, M::kArmV) = t;
  model.arm_splitter(M::kArmV, M::kInconclusivePort) = -t;
  model.arm_splitter(M::kInconclusivePort, M::kInconclusivePort) = r;

  const double h = 1.0 / std::sqrt(2.0);
  model.analyser = identity;
  model.analyser(M::kMainV, M::kMainV) = h;
  model.analyser(M::kMainV, M::kMainH) = h;
  model.analyser(M::kMainH, M::kMainV) = h;
  model.analyser(M::kMainH, M::kMainH) = -h;

  for (auto& d : model.detectors) d = Matrix::Zero(4, 4);
  model.detectors[0](M::kMainV, M::kMainV) = 1.0;
  model.detectors[1](M::kMainH, M::kMainH) = 1.0;
  model.detectors[2](M::kInconclusivePort, M::kInconclusivePort) = 1.0;
  return model;
}

InterferometerRun interferometer_sim(double theta) {
  const InterferometerModel model = make_interferometer(theta);
  const TwoStateFamily family(theta, 0.5);
  const std::array<Ket, 2> inputs{family.psi_plus(), family.psi_minus()};
  const Matrix before_analyser = model.recombiner * model.arm_splitter * model.first_splitter;
  const Matrix full = model.network();

  std::array<DetectorStatistics, 2> stats;
  std::vector<Ket> recombined;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Vector in = model.embed(inputs[i]);
    const Vector out = full * in;
    auto click = [&](const Matrix& detector) { return out.dot(detector * out).real(); };
    stats[i] = {click(model.detectors[0]), click(model.detectors[1]), click(model.detectors[2])};

    const Vector mid = before_analyser * in;
    Vector polarisation(2);
    polarisation << mid(InterferometerModel::kMainV), mid(InterferometerModel::kMainH);
    recombined.push_back(Ket::normalized(polarisation).canonical());
  }
  return {model, stats, {recombined[0], recombined[1]}};
}

}  // namespace qsd
