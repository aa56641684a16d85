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

#include "qsd/qcore.hpp"

namespace qsd {

/// Modulus of the overlap of two states, in [0, 1].
class OverlapScalar {
 public:
  explicit OverlapScalar(double s);
  double value() const { return s_; }

 private:
  double s_;
};

/// Optimal unambiguous success with M copies: 1 - s^M.
double multicopy_discrimination(int copies, OverlapScalar s);

/// Optimal exact-cloning probability M -> N: (1 - s^M) / (1 - s^N).
double clone_probability(int m, int n, OverlapScalar s);

/// Optimal separation probability (1 - s1) / (1 - s2) for s2 < s1.
double separation_probability(OverlapScalar s1, OverlapScalar s2);

/// Optimal mean estimation fidelity with M copies: (M + 1) / (M + 2).
double estimation_fidelity(int copies);
/// Optimal estimation shrinking factor: M / (M + 2).
double estimation_shrink(int copies);

/// Optimal universal-cloning shrinking factor M(N + 2) / (N(M + 2)).
double ucm_shrink(int m, int n);
/// Optimal universal-cloning fidelity (M + N + MN) / (N(M + 2)).
double ucm_fidelity(int m, int n);

/// Depolarises a qubit: rho -> (1 - S)/2 + S rho, i.e. a -> S a.
class ShrinkChannel {
 public:
  explicit ShrinkChannel(double factor);
  double factor() const { return s_; }

  DensityOperator apply(const Ket& psi) const;
  DensityOperator apply(const DensityOperator& rho) const;

 private:
  double s_;
};

inline DensityOperator apply_shrink(const ShrinkChannel& channel, const Ket& psi) {
  return channel.apply(psi);
}

}  // namespace qsd
