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

#include "qsd/bounds.hpp"

#include <cmath>
#include <string>

#include "qsd/error.hpp"

namespace qsd {

namespace {

void check_copies(int m) {
  if (m < 1) throw ValidationError("copy count must be >= 1");
}

void check_pair(int m, int n) {
  check_copies(m);
  if (n < m) throw ValidationError("need N >= M (got M = " + std::to_string(m) + ", N = " + std::to_string(n) + ")");
}

}  // namespace

OverlapScalar::OverlapScalar(double s) : s_(s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("overlap modulus must lie in [0, 1]");
}

double multicopy_discrimination(int copies, OverlapScalar s) {
  check_copies(copies);
  return 1.0 - std::pow(s.value(), copies);
}

double clone_probability(int m, int n, OverlapScalar s) {
  check_pair(m, n);
  if (m == n) return 1.0;
  if (s.value() >= 1.0) throw ValidationError("identical states cannot be cloned into more copies");
  return (1.0 - std::pow(s.value(), m)) / (1.0 - std::pow(s.value(), n));
}

double separation_probability(OverlapScalar s1, OverlapScalar s2) {
  if (!(s2.value() < s1.value())) {
    throw ValidationError("separation needs the final overlap below the initial one");
  }
  return (1.0 - s1.value()) / (1.0 - s2.value());
}

double estimation_fidelity(int copies) {
  check_copies(copies);
  return static_cast<double>(copies + 1) / static_cast<double>(copies + 2);
}

double estimation_shrink(int copies) {
  check_copies(copies);
  return static_cast<double>(copies) / static_cast<double>(copies + 2);
}

double ucm_shrink(int m, int n) {
  check_pair(m, n);
  const double md = m;
  const double nd = n;
  return md * (nd + 2.0) / (nd * (md + 2.0));
}

double ucm_fidelity(int m, int n) {
  check_pair(m, n);
  const double md = m;
  const double nd = n;
  return (md + nd + md * nd) / (nd * (md + 2.0));
}

ShrinkChannel::ShrinkChannel(double factor) : s_(factor) {
  if (!(factor >= 0.0 && factor <= 1.0)) throw ValidationError("shrinking factor must lie in [0, 1]");
}

DensityOperator ShrinkChannel::apply(const Ket& psi) const {
  return apply(DensityOperator::pure(psi));
}

DensityOperator ShrinkChannel::apply(const DensityOperator& rho) const {
  if (rho.dim() != 2) throw DimensionError("shrink channel acts on qubits");
  return DensityOperator(0.5 * (1.0 - s_) * Matrix::Identity(2, 2) + s_ * rho.matrix());
}

}  // namespace qsd
