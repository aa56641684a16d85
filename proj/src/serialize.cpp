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

#include "qsd/serialize.hpp"

#include <string>

#include "qsd/error.hpp"

namespace qsd::json {

namespace {

Json real_matrix(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json real_vector(const RealVector& v) {
  Json out = Json::array();
  for (const double x : v) out.push_back(x);
  return out;
}

template <typename F>
auto parse_guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Ket& k) { return to_json(k.amplitudes()); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Povm& p) {
  Json elements = Json::array();
  for (const Matrix& e : p.elements()) elements.push_back(to_json(e));
  return {{"elements", elements}, {"labels", p.labels()}};
}

Json to_json(const KrausSet& k) {
  Json ops = Json::array();
  for (const Matrix& a : k.operators()) ops.push_back(to_json(a));
  return {{"operators", ops}, {"labels", k.labels()}};
}

Json to_json(const NaimarkDilation& d) {
  return {{"system_dim", d.system_dim},
          {"ancilla_dim", d.ancilla_dim},
          {"ancilla_init", to_json(d.ancilla_init)},
          {"joint_unitary", to_json(d.joint_unitary)}};
}

Json to_json(const Ensemble& e) {
  Json states = Json::array();
  for (const auto& s : e.states()) states.push_back(to_json(s.matrix()));
  return {{"states", states}, {"priors", e.priors()}};
}

Json to_json(const OptimalityReport& r) {
  return {{"gamma", to_json(r.gamma)},
          {"pairwise_residuals", real_matrix(r.pairwise_residuals)},
          {"psd_margins", real_vector(r.psd_margins)},
          {"gamma_hermiticity", r.gamma_hermiticity},
          {"passed", r.passed}};
}

Json to_json(const UnambiguousPovm& u) {
  Json conclusive = Json::array();
  for (const Matrix& m : u.conclusive) conclusive.push_back(to_json(m));
  return {{"conclusive", conclusive}, {"inconclusive", to_json(u.inconclusive)}, {"success", u.success}};
}

Json to_json(const ConcentrationPlan& plan) {
  auto kets = [](const std::vector<Ket>& ks) {
    Json out = Json::array();
    for (const Ket& k : ks) out.push_back(to_json(k));
    return out;
  };
  return {{"rank", plan.rank},
          {"schmidt_coefficients", real_vector(plan.schmidt.coefficients)},
          {"x_states", kets(plan.x_states)},
          {"y_basis", kets(plan.y_basis)},
          {"target_basis", kets(plan.target_basis)},
          {"orthogonaliser", to_json(plan.orthogonaliser)},
          {"success_prob", plan.success_prob}};
}

Json to_json(const SimReport& r) {
  Json metrics = Json::array();
  for (const auto& m : r.metrics) {
    metrics.push_back({{"name", m.name},
                       {"count", m.count},
                       {"denominator", m.denominator},
                       {"rate", m.rate},
                       {"stderr", m.std_error},
                       {"analytic", m.analytic},
                       {"pass", m.pass}});
  }
  return {{"seed", r.seed},
          {"trials", r.trials},
          {"labels", r.labels},
          {"outcome_counts", r.outcome_counts},
          {"metrics", metrics}};
}

Complex complex_from_json(const Json& j) {
  return parse_guard([&] {
    if (!j.is_array() || j.size() != 2) throw ValidationError("complex number must be [re, im]");
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
  });
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("ket must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Ket ket_from_json(const Json& j) { return Ket(vector_from_json(j)); }

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ValidationError("operator must be a non-empty nested array");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ValidationError("operator rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

Povm povm_from_json(const Json& j) {
  return parse_guard([&] {
    std::vector<Matrix> elements;
    for (const auto& e : j.at("elements")) elements.push_back(matrix_from_json(e));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return Povm(std::move(elements), std::move(labels));
  });
}

KrausSet kraus_from_json(const Json& j) {
  return parse_guard([&] {
    std::vector<Matrix> ops;
    for (const auto& e : j.at("operators")) ops.push_back(matrix_from_json(e));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return KrausSet(std::move(ops), std::move(labels));
  });
}

Ensemble ensemble_from_json(const Json& j) {
  return parse_guard([&] {
    std::vector<DensityOperator> states;
    for (const auto& s : j.at("states")) {
      // A flat array of complex numbers is a ket; nested rows are an operator.
      const bool is_ket = s.is_array() && !s.empty() && s.front().is_array() && s.front().size() == 2 &&
                          s.front().front().is_number();
      states.push_back(is_ket ? DensityOperator::pure(ket_from_json(s)) : DensityOperator(matrix_from_json(s)));
    }
    return Ensemble(std::move(states), j.at("priors").get<std::vector<double>>());
  });
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace qsd::json
