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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsd/minerror.hpp"
#include "qsd/unambiguous.hpp"

namespace qsd {

struct SimConfig {
  std::uint64_t seed = 0;
  std::uint64_t trials = 100000;
  /// Pass band half-width in standard errors.
  double confidence = 3.0;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Uniform double in [0, 1) determined only by (seed, trial, stream).
double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream);

/// Born probabilities below this are never sampled.
inline constexpr double kSamplingFloor = 1e-12;

/// Index chosen by inverse CDF. Entries below kSamplingFloor are zeroed and
/// the rest renormalised; throws ValidationError unless they sum to 1 within
/// 1e-9 after clamping.
std::size_t sample_categorical(std::span<const double> probabilities, double u);

struct SimMetric {
  std::string name;
  std::uint64_t count = 0;
  /// Trials the rate is taken over.
  std::uint64_t denominator = 0;
  double rate = 0.0;
  /// sqrt(p (1 - p) / n) at the analytic p.
  double std_error = 0.0;
  double analytic = 0.0;
  bool pass = false;
};

struct SimReport {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::vector<std::string> labels;
  /// Sums to trials.
  std::vector<std::uint64_t> outcome_counts;
  std::vector<SimMetric> metrics;

  bool passed() const;
  const SimMetric& metric(const std::string& name) const;
};

/// counts[j][k]: trials in which state j was prepared and outcome k observed.
/// States are drawn from priors, outcomes from channel row j.
std::vector<std::vector<std::uint64_t>> sample_joint(std::span<const double> priors,
                                                     const RealMatrix& channel, const SimConfig& cfg);

/// Metric "error" compares the empirical error rate to error_probability.
SimReport run_discrimination(const Ensemble& ens, const Povm& povm, const Assignment& assignment,
                             const SimConfig& cfg);

/// Equiprobable inputs. Metrics "inconclusive", "wrong", "correct" and
/// "success_j" (per prepared state).
SimReport run_unambiguous(std::span<const Ket> states, const UnambiguousPovm& povm, const SimConfig& cfg);

/// Repeated measurement of one state; one metric per outcome label.
SimReport run_measurement(const DensityOperator& rho, const Povm& povm, const SimConfig& cfg);

struct SweepRow {
  double theta = 0.0;
  double analytic = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

/// Helstrom measurement on equiprobable cos(theta)|+> +- sin(theta)|-> for
/// every grid angle, against (1 - sin 2 theta) / 2.
std::vector<SweepRow> sweep_theta(std::span<const double> grid, const SimConfig& cfg);

}  // namespace qsd
