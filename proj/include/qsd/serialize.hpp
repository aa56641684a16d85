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

#include <json.hpp>

#include "qsd/entangle.hpp"
#include "qsd/mcsim.hpp"
#include "qsd/minerror.hpp"
#include "qsd/povm.hpp"
#include "qsd/unambiguous.hpp"

// Shared JSON convention: complex numbers are [re, im], kets are arrays of
// complex numbers, operators are row-major nested arrays.
namespace qsd::json {

using Json = nlohmann::json;

Json to_json(Complex z);
Json to_json(const Vector& v);
Json to_json(const Ket& k);
Json to_json(const Matrix& m);
Json to_json(const Povm& p);
Json to_json(const KrausSet& k);
Json to_json(const NaimarkDilation& d);
Json to_json(const Ensemble& e);
Json to_json(const OptimalityReport& r);
Json to_json(const UnambiguousPovm& u);
Json to_json(const ConcentrationPlan& plan);
Json to_json(const SimReport& r);

Complex complex_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Ket ket_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
Povm povm_from_json(const Json& j);
KrausSet kraus_from_json(const Json& j);
Ensemble ensemble_from_json(const Json& j);

/// Pretty-printed document; doubles round-trip exactly.
std::string dump(const Json& j);

}  // namespace qsd::json
