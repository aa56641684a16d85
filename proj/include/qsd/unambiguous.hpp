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
#include <span>
#include <vector>

#include "qsd/minerror.hpp"

namespace qsd {

/// Gram-matrix eigenvalue ratio below which a state set counts as dependent.
inline constexpr double kIndependenceCutoff = 1e-10;

/// Minimum inconclusive probability for two equiprobable pure states.
double idp_bound(double overlap);
/// Per-state success probability at the IDP optimum, 1 - overlap.
double idp_success(double overlap);

/// |psi_j^perp>: in the span of the inputs, orthogonal to every input but j.
struct ReciprocalBasis {
  std::vector<Ket> states;
};

/// Throws LinearDependenceError when the inputs are linearly dependent.
ReciprocalBasis reciprocal_states(std::span<const Ket> states);

bool linearly_independent(std::span<const Ket> states, double cutoff = kIndependenceCutoff);

struct UnambiguousPovm {
  std::vector<Matrix> conclusive;
  Matrix inconclusive;
  std::vector<double> success;

  /// Conclusive outcomes labelled "0".."N-1", then "?".
  Povm as_povm() const;
};

/// Pi_j = P_j / |<psi_j^perp|psi_j>|^2 |psi_j^perp><psi_j^perp|, Pi_? = 1 - sum Pi_j.
/// Throws InfeasibleError carrying the most negative eigenvalue of Pi_? when
/// the requested success probabilities are too large.
UnambiguousPovm unambiguous_povm(std::span<const Ket> states, std::span<const double> success,
                                 double tol = kDefaultTol);

struct SymmetricOptimum {
  double success = 0.0;
  double inconclusive = 0.0;
};

/// For equiprobable symmetric states: success N min_k |c_k|^2 per state and
/// inconclusive probability 1 - success.
SymmetricOptimum symmetric_unambiguous_optimum(const SymmetricFamily& family);

/// States left behind by the inconclusive outcome, Pi_?^(1/2)|psi_j> normalised.
/// Throws ImpossibleOutcomeError when some input never fails.
std::vector<Ket> failure_posterior(std::span<const Ket> states, const UnambiguousPovm& povm);

/// Single-photon network that discriminates cos(theta)|V> +- sin(theta)|H>
/// without error. Modes are ordered {main H, main V, arm V, D? port}.
struct InterferometerModel {
  static constexpr Eigen::Index kMainH = 0;
  static constexpr Eigen::Index kMainV = 1;
  static constexpr Eigen::Index kArmV = 2;
  static constexpr Eigen::Index kInconclusivePort = 3;

  double theta = 0.0;
  double transmission = 0.0;
  double reflection = 0.0;
  Matrix first_splitter;     // PBS1: V to the arm
  Matrix arm_splitter;       // BS: arm V to the D? port with amplitude t
  Matrix recombiner;         // PBS2: arm V back to the main path
  Matrix analyser;           // PBS3 at 45 degrees: diagonal to D+, antidiagonal to D-
  /// Detector projectors D+, D-, D? on the mode space after the analyser.
  std::array<Matrix, 3> detectors;

  Matrix network() const { return analyser * recombiner * arm_splitter * first_splitter; }
  /// Embeds a polarisation ket (V, H) into the main path.
  Vector embed(const Ket& polarisation) const;
  /// Effective polarisation POVM {D+, D-, D?}.
  Povm effective_povm() const;
};

InterferometerModel make_interferometer(double theta);

struct DetectorStatistics {
  double plus = 0.0;
  double minus = 0.0;
  double inconclusive = 0.0;
};

struct InterferometerRun {
  InterferometerModel model;
  /// Inputs psi_+ and psi_-, in that order.
  std::array<DetectorStatistics, 2> stats;
  /// Main-path polarisation (V, H) after PBS2, conditioned on no D? click.
  std::array<Ket, 2> recombined;
};

/// theta must lie in (0, pi/4].
InterferometerRun interferometer_sim(double theta);

}  // namespace qsd
