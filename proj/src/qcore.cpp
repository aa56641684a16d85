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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qsd/error.hpp"

namespace qsd {

namespace {

Vector gaussian_vector(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

// Phase that makes the first entry above threshold real and non-negative.
Complex canonical_phase(const Vector& v) {
  const double threshold = 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > threshold) {
      return std::conj(v(i)) / std::abs(v(i));
    }
  }
  return 1.0;
}

bool lexicographic_less(const Vector& x, const Vector& y) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).real() != y(i).real()) return x(i).real() < y(i).real();
    if (x(i).imag() != y(i).imag()) return x(i).imag() < y(i).imag();
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ket

Ket::Ket(Vector amplitudes, double tol) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw DimensionError("ket must have dimension >= 1");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol) {
    throw ValidationError("ket is not normalised (squared norm " + std::to_string(norm2) + ")");
  }
}

Ket Ket::normalized(const Vector& v) {
  const double norm = v.norm();
  if (v.size() < 1 || norm == 0.0 || !std::isfinite(norm)) {
    throw ValidationError("cannot normalise a zero or non-finite vector");
  }
  return Ket(v / norm);
}

Ket Ket::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw DimensionError("basis index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return Ket(std::move(v));
}

Complex Ket::inner(const Ket& other) const {
  if (dim() != other.dim()) {
    throw DimensionError("ket dimensions differ");
  }
  return amplitudes_.dot(other.amplitudes_);  // conjugates the left argument
}

double Ket::fidelity(const Ket& other) const { return std::norm(inner(other)); }

Matrix Ket::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

Ket Ket::canonical() const {
  Ket out = *this;
  out.amplitudes_ *= canonical_phase(amplitudes_);
  return out;
}

// ---------------------------------------------------------------------------
// DensityOperator

bool is_density_operator(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  if (hermiticity_defect(m) > tol) return false;
  if (std::abs(m.trace() - Complex(1.0)) > tol) return false;
  return min_eigenvalue(m, tol) >= -tol;
}

DensityOperator::DensityOperator(Matrix entries, double tol) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.size() == 0) {
    throw DimensionError("density operator must be a non-empty square matrix");
  }
  const double defect = hermiticity_defect(entries_);
  if (defect > tol) {
    throw ValidationError("density operator is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const Complex trace = entries_.trace();
  if (std::abs(trace - Complex(1.0)) > tol) {
    throw ValidationError("density operator trace is " + std::to_string(trace.real()));
  }
  const double lowest = min_eigenvalue(entries_, tol);
  if (lowest < -tol) {
    throw ValidationError("density operator has negative eigenvalue " + std::to_string(lowest));
  }
}

DensityOperator DensityOperator::pure(const Ket& ket) { return DensityOperator(ket.projector()); }

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  if (dim < 1) throw DimensionError("dimension must be >= 1");
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::mixture(std::span<const double> weights, std::span<const Ket> kets) {
  if (weights.size() != kets.size() || kets.empty()) {
    throw DimensionError("mixture needs one weight per ket");
  }
  const Eigen::Index d = kets.front().dim();
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t r = 0; r < kets.size(); ++r) {
    if (kets[r].dim() != d) throw DimensionError("mixture kets differ in dimension");
    if (weights[r] < 0.0) throw ValidationError("mixture weights must be non-negative");
    m += weights[r] * kets[r].projector();
  }
  return DensityOperator(std::move(m));
}

RealVector DensityOperator::eigenvalues() const { return hermitian_eigen(entries_).values; }

double DensityOperator::purity() const { return (entries_ * entries_).trace().real(); }

// ---------------------------------------------------------------------------
// BipartiteState

BipartiteState::BipartiteState(Matrix amplitudes, double tol) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw DimensionError("bipartite state must have dimensions >= 1");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol) {
    throw ValidationError("bipartite state is not normalised (squared norm " +
                          std::to_string(norm2) + ")");
  }
}

BipartiteState BipartiteState::from_vector(const Vector& joint, Eigen::Index dim_a,
                                           Eigen::Index dim_b, double tol) {
  if (dim_a < 1 || dim_b < 1 || joint.size() != dim_a * dim_b) {
    throw DimensionError("joint vector length does not match dA * dB");
  }
  Matrix b(dim_a, dim_b);
  for (Eigen::Index j = 0; j < dim_a; ++j) {
    for (Eigen::Index k = 0; k < dim_b; ++k) b(j, k) = joint(j * dim_b + k);
  }
  return BipartiteState(std::move(b), tol);
}

BipartiteState BipartiteState::product(const Ket& a, const Ket& b) {
  return BipartiteState(a.amplitudes() * b.amplitudes().transpose());
}

Vector BipartiteState::joint_vector() const {
  Vector v(dim_a() * dim_b());
  for (Eigen::Index j = 0; j < dim_a(); ++j) {
    for (Eigen::Index k = 0; k < dim_b(); ++k) v(j * dim_b() + k) = amplitudes_(j, k);
  }
  return v;
}

BipartiteState SchmidtDecomposition::reconstruct() const {
  Matrix b = Matrix::Zero(dim_a, dim_b);
  for (Eigen::Index j = 0; j < rank(); ++j) {
    b += coefficients(j) * basis_a[j].amplitudes() * basis_b[j].amplitudes().transpose();
  }
  return BipartiteState(std::move(b));
}

// ---------------------------------------------------------------------------
// Operations

Complex expectation(const DensityOperator& rho, const Matrix& obs) {
  if (obs.rows() != rho.dim() || obs.cols() != rho.dim()) {
    throw DimensionError("observable dimension does not match state");
  }
  return (rho.matrix() * obs).trace();
}

SchmidtDecomposition schmidt(const BipartiteState& psi, double cutoff) {
  const Matrix& b = psi.amplitudes();
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();

  struct Term {
    double coefficient;
    Vector a;
    Vector b;
  };
  std::vector<Term> terms;
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  for (Eigen::Index r = 0; r < sv.size(); ++r) {
    if (sv(r) <= cutoff * largest) continue;
    // b = U S V^dagger, so |psi> = sum_r s_r |u_r> (x) conj(|v_r>).
    const Complex phase = canonical_phase(u.col(r));
    terms.push_back({sv(r), u.col(r) * phase, v.col(r).conjugate() / phase});
  }
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    if (std::abs(x.coefficient - y.coefficient) > 1e-12) return x.coefficient > y.coefficient;
    return lexicographic_less(x.a, y.a);
  });

  SchmidtDecomposition out;
  out.dim_a = psi.dim_a();
  out.dim_b = psi.dim_b();
  out.coefficients.resize(static_cast<Eigen::Index>(terms.size()));
  for (std::size_t j = 0; j < terms.size(); ++j) {
    out.coefficients(static_cast<Eigen::Index>(j)) = terms[j].coefficient;
    out.basis_a.push_back(Ket::normalized(terms[j].a));
    out.basis_b.push_back(Ket::normalized(terms[j].b));
  }
  return out;
}

DensityOperator partial_trace(const BipartiteState& psi, Subsystem keep) {
  const Matrix& b = psi.amplitudes();
  switch (keep) {
    case Subsystem::A:
      return DensityOperator(b * b.adjoint());
    case Subsystem::B:
      return DensityOperator(b.transpose() * b.conjugate());
  }
  throw ValidationError("invalid subsystem selector");
}

double shannon_entropy(const RealVector& probabilities) {
  double h = 0.0;
  for (const double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double von_neumann_entropy(const DensityOperator& rho) { return shannon_entropy(rho.eigenvalues()); }

double entanglement_entropy(const BipartiteState& psi) {
  const auto decomposition = schmidt(psi);
  return shannon_entropy(decomposition.coefficients.cwiseAbs2());
}

const std::array<Matrix, 3>& pauli_matrices() {
  static const std::array<Matrix, 3> paulis = [] {
    using namespace std::complex_literals;
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    y << 0.0, -1i, 1i, 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    return std::array<Matrix, 3>{x, y, z};
  }();
  return paulis;
}

const Matrix& pauli_x() { return pauli_matrices()[0]; }
const Matrix& pauli_y() { return pauli_matrices()[1]; }
const Matrix& pauli_z() { return pauli_matrices()[2]; }

DensityOperator bloch_to_density(const BlochVector& bloch, double tol) {
  if (bloch.a.norm() > 1.0 + tol) {
    throw ValidationError("Bloch vector longer than 1");
  }
  Matrix rho = Matrix::Identity(2, 2);
  for (int k = 0; k < 3; ++k) rho += bloch.a(k) * pauli_matrices()[k];
  return DensityOperator(0.5 * rho, tol);
}

BlochVector density_to_bloch(const DensityOperator& rho) {
  if (rho.dim() != 2) {
    throw DimensionError("Bloch representation requires a qubit");
  }
  BlochVector out;
  for (int k = 0; k < 3; ++k) out.a(k) = expectation(rho, pauli_matrices()[k]).real();
  return out;
}

Ket random_ket(Eigen::Index dim, std::mt19937_64& rng) {
  return Ket::normalized(gaussian_vector(dim, rng));
}

Ket haar_qubit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double cos_polar = 2.0 * uniform(rng) - 1.0;
  const double azimuth = 2.0 * std::numbers::pi * uniform(rng);
  const double half = 0.5 * std::acos(std::clamp(cos_polar, -1.0, 1.0));
  Vector v(2);
  v << std::cos(half), std::polar(std::sin(half), azimuth);
  return Ket::normalized(v);
}

DensityOperator random_density(Eigen::Index dim, std::mt19937_64& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) g.col(c) = gaussian_vector(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityOperator(std::move(rho));
}

BipartiteState random_bipartite(Eigen::Index dim_a, Eigen::Index dim_b, std::mt19937_64& rng) {
  return BipartiteState::from_vector(random_ket(dim_a * dim_b, rng).amplitudes(), dim_a, dim_b);
}

}  // namespace qsd
