// Copyright 2026 The lossybs Authors
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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lossybs/circuit/circuit.h"

namespace lossybs {

/// {"modes": M, "layers": [{"phases": [...], "couplers": [{"mode", "theta", "phi", "tau"}],
///  "idle_tau": t}]}. "phases" and "idle_tau" are optional on input. Doubles are
/// written in shortest round-trip form, so parse(serialize(c)) == c bit for bit.
nlohmann::json circuit_to_json(const LayeredCircuit &c);
LayeredCircuit circuit_from_json(const nlohmann::json &j);

LayeredCircuit load_circuit(const std::filesystem::path &path);
void save_circuit(const LayeredCircuit &c, const std::filesystem::path &path);

}  // namespace lossybs
