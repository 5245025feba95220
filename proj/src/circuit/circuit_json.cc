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

#include "lossybs/circuit/circuit_json.h"

#include <fstream>

#include "lossybs/errors.h"

namespace lossybs {
namespace {

using nlohmann::json;

const json &require(const json &j, const char *key, const std::string &where) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(where + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

double number(const json &j, const std::string &where) {
    if (!j.is_number()) {
        throw InputError(where + ": expected a number");
    }
    return j.get<double>();
}

int integer(const json &j, const std::string &where) {
    if (!j.is_number_integer()) {
        throw InputError(where + ": expected an integer");
    }
    return j.get<int>();
}

}  // namespace

json circuit_to_json(const LayeredCircuit &c) {
    json layers = json::array();
    for (const Layer &layer : c.layers) {
        json couplers = json::array();
        for (const CouplerGate &g : layer.couplers) {
            couplers.push_back({{"mode", g.mode}, {"theta", g.theta}, {"phi", g.phi}, {"tau", g.tau}});
        }
        std::vector<double> phases = layer.phases;
        if (phases.empty()) {
            phases.assign(c.modes, 0.0);
        }
        json entry = {{"phases", phases}, {"couplers", couplers}};
        if (layer.idle_tau != 1.0) {
            entry["idle_tau"] = layer.idle_tau;
        }
        layers.push_back(std::move(entry));
    }
    return {{"modes", c.modes}, {"layers", layers}};
}

LayeredCircuit circuit_from_json(const json &j) {
    LayeredCircuit c;
    c.modes = integer(require(j, "modes", "circuit"), "circuit.modes");
    const json &layers = require(j, "layers", "circuit");
    if (!layers.is_array()) {
        throw InputError("circuit.layers: expected an array");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const std::string where = "circuit.layers[" + std::to_string(l) + "]";
        const json &entry = layers[l];
        if (!entry.is_object()) {
            throw InputError(where + ": expected an object");
        }
        Layer layer;
        if (entry.contains("phases")) {
            const json &phases = entry.at("phases");
            if (!phases.is_array()) {
                throw InputError(where + ".phases: expected an array");
            }
            for (std::size_t i = 0; i < phases.size(); ++i) {
                layer.phases.push_back(number(phases[i], where + ".phases[" + std::to_string(i) + "]"));
            }
        }
        if (entry.contains("idle_tau")) {
            layer.idle_tau = number(entry.at("idle_tau"), where + ".idle_tau");
        }
        if (entry.contains("couplers")) {
            const json &couplers = entry.at("couplers");
            if (!couplers.is_array()) {
                throw InputError(where + ".couplers: expected an array");
            }
            for (std::size_t g = 0; g < couplers.size(); ++g) {
                const std::string gw = where + ".couplers[" + std::to_string(g) + "]";
                const json &cj = couplers[g];
                CouplerGate gate;
                gate.mode = integer(require(cj, "mode", gw), gw + ".mode");
                gate.theta = number(require(cj, "theta", gw), gw + ".theta");
                gate.phi = cj.contains("phi") ? number(cj.at("phi"), gw + ".phi") : 0.0;
                gate.tau = cj.contains("tau") ? number(cj.at("tau"), gw + ".tau") : 1.0;
                layer.couplers.push_back(gate);
            }
        }
        c.layers.push_back(std::move(layer));
    }
    c.validate();
    return c;
}

LayeredCircuit load_circuit(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open circuit file " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(path.string() + ": " + e.what());
    }
    return circuit_from_json(j);
}

void save_circuit(const LayeredCircuit &c, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write circuit file " + path.string());
    }
    out << circuit_to_json(c).dump(2) << "\n";
}

}  // namespace lossybs
