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

#include "qsd/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "qsd/error.hpp"

namespace qsd {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kStateStream = 0;
constexpr std::uint64_t kOutcomeStream = 1;

SimMetric make_metric(std::string name, std::uint64_t count, std::uint64_t denominator, double analytic,
                      double confidence) {
  SimMetric m;
  m.name = std::move(name);
  m.count = count;
  m.denominator = denominator;
  m.analytic = analytic;
  if (denominator > 0) {
    const double n = static_cast<double>(denominator);
    m.rate = static_cast<double>(count) / n;
    const double p = std::clamp(analytic, 0.0, 1.0);
    m.std_error = std::sqrt(p * (1.0 - p) / n);
  }
  m.pass = std::abs(m.rate - m.analytic) <= confidence * m.std_error + 1e-12;
  return m;
}

std::vector<std::uint64_t> column_sums(const std::vector<std::vector<std::uint64_t>>& counts) {
  std::vector<std::uint64_t> out(counts.empty() ? 0 : counts.front().size(), 0);
  for (const auto& row : counts) {
    for (std::size_t k = 0; k < row.size(); ++k) out[k] += row[k];
  }
  return out;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
  const std::uint64_t h = splitmix(splitmix(seed) ^ splitmix(trial * 0x100000001b3ULL + stream));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::size_t sample_categorical(std::span<const double> probabilities, double u) {
  if (probabilities.empty()) throw ValidationError("cannot sample from an empty distribution");
  double total = 0.0;
  for (const double p : probabilities) total += p >= kSamplingFloor ? p : 0.0;
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("probabilities sum to " + std::to_string(total));
  }
  const double target = u * total;
  double cumulative = 0.0;
  std::size_t last_allowed = 0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] < kSamplingFloor) continue;
    cumulative += probabilities[k];
    last_allowed = k;
    if (target < cumulative) return k;
  }
  return last_allowed;
}

std::vector<std::vector<std::uint64_t>> sample_joint(std::span<const double> priors,
                                                     const RealMatrix& channel, const SimConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
  const auto n_states = static_cast<std::size_t>(channel.rows());
  const auto n_outcomes = static_cast<std::size_t>(channel.cols());
  if (priors.size() != n_states) throw ValidationError("need one prior per channel row");

  std::vector<std::vector<double>> rows(n_states, std::vector<double>(n_outcomes));
  for (std::size_t j = 0; j < n_states; ++j) {
    for (std::size_t k = 0; k < n_outcomes; ++k) {
      rows[j][k] = channel(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
  }
  using Counts = std::vector<std::vector<std::uint64_t>>;
  auto run_range = [&](std::uint64_t begin, std::uint64_t end, Counts& counts) {
    for (std::uint64_t t = begin; t < end; ++t) {
      const std::size_t j = sample_categorical(priors, counter_uniform(cfg.seed, t, kStateStream));
      const std::size_t k = sample_categorical(rows[j], counter_uniform(cfg.seed, t, kOutcomeStream));
      ++counts[j][k];
    }
  };

  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, cfg.trials));
  std::vector<Counts> partial(workers, Counts(n_states, std::vector<std::uint64_t>(n_outcomes, 0)));
  if (workers == 1) {
    run_range(0, cfg.trials, partial[0]);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(cfg.trials, begin + chunk);
      pool.emplace_back([&, w, begin, end] { run_range(begin, end, partial[w]); });
    }
  }
  Counts total(n_states, std::vector<std::uint64_t>(n_outcomes, 0));
  for (const auto& p : partial) {
    for (std::size_t j = 0; j < n_states; ++j) {
      for (std::size_t k = 0; k < n_outcomes; ++k) total[j][k] += p[j][k];
    }
  }
  return total;
}

bool SimReport::passed() const {
  return std::all_of(metrics.begin(), metrics.end(), [](const SimMetric& m) { return m.pass; });
}

const SimMetric& SimReport::metric(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m;
  }
  throw ValidationError("no metric named " + name);
}

SimReport run_discrimination(const Ensemble& ens, const Povm& povm, const Assignment& assignment,
                             const SimConfig& cfg) {
  const Assignment resolved = assignment.empty() ? index_assignment(povm.size(), ens.size()) : assignment;
  const double analytic = error_probability(ens, povm, resolved);
  const RealMatrix channel = channel_matrix(ens, povm);
  const auto counts = sample_joint(ens.priors(), channel, cfg);

  std::uint64_t correct = 0;
  for (std::size_t k = 0; k < resolved.size(); ++k) {
    if (resolved[k]) correct += counts[*resolved[k]][k];
  }
  SimReport report;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  report.labels = povm.labels();
  report.outcome_counts = column_sums(counts);
  report.metrics.push_back(make_metric("error", cfg.trials - correct, cfg.trials, analytic, cfg.confidence));
  return report;
}

SimReport run_unambiguous(std::span<const Ket> states, const UnambiguousPovm& upovm, const SimConfig& cfg) {
  const Povm povm = upovm.as_povm();
  const Ensemble ens = Ensemble::uniform(states);
  const RealMatrix channel = channel_matrix(ens, povm);
  const auto counts = sample_joint(ens.priors(), channel, cfg);
  const std::size_t n = states.size();
  const std::size_t inconclusive_index = n;

  std::uint64_t inconclusive = 0;
  std::uint64_t wrong = 0;
  std::uint64_t correct = 0;
  double analytic_inconclusive = 0.0;
  double analytic_wrong = 0.0;
  double analytic_correct = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double eta = ens.priors()[j];
    for (std::size_t k = 0; k <= n; ++k) {
      const double p = channel(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
      if (k == inconclusive_index) {
        inconclusive += counts[j][k];
        analytic_inconclusive += eta * p;
      } else if (k == j) {
        correct += counts[j][k];
        analytic_correct += eta * p;
      } else {
        wrong += counts[j][k];
        analytic_wrong += eta * (p < kSamplingFloor ? 0.0 : p);
      }
    }
  }

  SimReport report;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  report.labels = povm.labels();
  report.outcome_counts = column_sums(counts);
  report.metrics.push_back(make_metric("inconclusive", inconclusive, cfg.trials, analytic_inconclusive, cfg.confidence));
  report.metrics.push_back(make_metric("wrong", wrong, cfg.trials, analytic_wrong, cfg.confidence));
  report.metrics.push_back(make_metric("correct", correct, cfg.trials, analytic_correct, cfg.confidence));
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t sent = 0;
    for (const auto c : counts[j]) sent += c;
    const double analytic = channel(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
    report.metrics.push_back(make_metric("success_" + std::to_string(j), counts[j][j], sent, analytic, cfg.confidence));
  }
  return report;
}

SimReport run_measurement(const DensityOperator& rho, const Povm& povm, const SimConfig& cfg) {
  const std::vector<double> probs = outcome_probs(povm, rho);
  RealMatrix channel(1, static_cast<Eigen::Index>(probs.size()));
  for (std::size_t k = 0; k < probs.size(); ++k) channel(0, static_cast<Eigen::Index>(k)) = probs[k];
  const std::vector<double> single{1.0};
  const auto counts = sample_joint(single, channel, cfg);

  SimReport report;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  report.labels = povm.labels();
  report.outcome_counts = counts.front();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    report.metrics.push_back(make_metric(povm.labels()[k], counts[0][k], cfg.trials, probs[k], cfg.confidence));
  }
  return report;
}

std::vector<SweepRow> sweep_theta(std::span<const double> grid, const SimConfig& cfg) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const double theta : grid) {
    if (!(theta > 0.0 && theta <= std::numbers::pi / 4.0 + 1e-12)) {
      throw ValidationError("sweep angles must lie in (0, pi/4]");
    }
    const TwoStateFamily family(std::min(theta, std::numbers::pi / 4.0), 0.5);
    const Povm povm = helstrom_measurement(family);
    const SimReport report = run_discrimination(family.ensemble(), povm, {}, cfg);
    const SimMetric& err = report.metric("error");
    SweepRow row;
    row.theta = theta;
    row.analytic = 0.5 * (1.0 - std::sin(2.0 * theta));
    row.empirical = err.rate;
    row.std_error = std::sqrt(std::max(row.analytic * (1.0 - row.analytic), 0.0) / static_cast<double>(cfg.trials));
    row.trials = cfg.trials;
    row.seed = cfg.seed;
    row.pass = std::abs(row.empirical - row.analytic) <= cfg.confidence * row.std_error + 1e-12;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qsd
