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

#include "lossybs/circuit/circuit.h"

#include <cmath>
#include <string>

#include "lossybs/errors.h"

namespace lossybs {

Eigen::Matrix2cd beamsplitter_block(double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex e = std::polar(1.0, phi);
    Eigen::Matrix2cd b;
    b << c, e * s, -std::conj(e) * s, c;
    return b;
}

Eigen::Matrix2cd CouplerGate::block() const {
    return beamsplitter_block(theta, phi);
}

void LayeredCircuit::validate() const {
    if (modes < 1) {
        throw InputError("circuit: modes must be at least 1");
    }
    for (int l = 0; l < depth(); ++l) {
        const Layer &layer = layers[l];
        const std::string where = "circuit layer " + std::to_string(l) + ": ";
        if (!layer.phases.empty() && static_cast<int>(layer.phases.size()) != modes) {
            throw InputError(where + "phases must list one angle per mode");
        }
        for (double p : layer.phases) {
            if (!std::isfinite(p)) {
                throw InputError(where + "non-finite phase");
            }
        }
        if (!(layer.idle_tau > 0.0 && layer.idle_tau <= 1.0)) {
            throw InputError(where + "idle_tau must lie in (0, 1]");
        }
        std::vector<bool> used(modes, false);
        for (const CouplerGate &g : layer.couplers) {
            if (g.mode < 0 || g.mode > modes - 2) {
                throw InputError(where + "coupler mode " + std::to_string(g.mode) + " outside [0, M-2]");
            }
            if (used[g.mode] || used[g.mode + 1]) {
                throw InputError(where + "overlapping couplers on mode " + std::to_string(g.mode));
            }
            used[g.mode] = used[g.mode + 1] = true;
            if (!(g.tau > 0.0 && g.tau <= 1.0)) {
                throw InputError(where + "coupler tau must lie in (0, 1]");
            }
            if (!std::isfinite(g.theta) || !std::isfinite(g.phi)) {
                throw InputError(where + "non-finite coupler angle");
            }
        }
    }
}

ComplexMatrix layer_matrix(const LayeredCircuit &c, int l) {
    const Layer &layer = c.layers.at(l);
    const int m = c.modes;
    ComplexMatrix a = ComplexMatrix::Zero(m, m);
    std::vector<bool> used(m, false);
    for (const CouplerGate &g : layer.couplers) {
        a.block<2, 2>(g.mode, g.mode) = std::sqrt(g.tau) * g.block();
        used[g.mode] = used[g.mode + 1] = true;
    }
    const double idle = std::sqrt(layer.idle_tau);
    for (int j = 0; j < m; ++j) {
        if (!used[j]) {
            a(j, j) = idle;
        }
    }
    if (!layer.phases.empty()) {
        for (int j = 0; j < m; ++j) {
            a.row(j) *= std::polar(1.0, layer.phases[j]);
        }
    }
    return a;
}

ComplexMatrix transfer_matrix(const LayeredCircuit &c) {
    c.validate();
    ComplexMatrix a = ComplexMatrix::Identity(c.modes, c.modes);
    for (int l = 0; l < c.depth(); ++l) {
        a = layer_matrix(c, l) * a;
    }
    return a;
}

LayeredCircuit random_brickwork(int m, int depth, double tau, RandomStream &rng) {
    if (m < 2 || depth < 1 || !(tau > 0.0 && tau <= 1.0)) {
        throw InputError("random_brickwork: need m >= 2, depth >= 1, tau in (0, 1]");
    }
    LayeredCircuit c;
    c.modes = m;
    for (int l = 0; l < depth; ++l) {
        Layer layer;
        layer.phases.assign(m, 0.0);
        layer.idle_tau = tau;
        for (int k = l % 2; k + 1 < m; k += 2) {
            // U = diag(e^{ia}, e^{ib}) * BS(theta, phi).
            const ComplexMatrix u = haar_unitary(2, rng);
            const double theta = std::atan2(std::abs(u(0, 1)), std::abs(u(0, 0)));
            double a;
            double phi;
            if (std::abs(u(0, 0)) > 0.0) {
                a = std::arg(u(0, 0));
                phi = std::arg(u(0, 1)) - a;
            } else {
                a = std::arg(u(0, 1));
                phi = 0.0;
            }
            const double b = std::abs(u(1, 1)) > 0.0 ? std::arg(u(1, 1)) : std::arg(-u(1, 0)) + phi;
            layer.couplers.push_back(CouplerGate{k, theta, phi, tau});
            layer.phases[k] = a;
            layer.phases[k + 1] = b;
        }
        c.layers.push_back(std::move(layer));
    }
    return c;
}

LayeredCircuit lossless_copy(const LayeredCircuit &c) {
    LayeredCircuit out = c;
    for (Layer &layer : out.layers) {
        layer.idle_tau = 1.0;
        for (CouplerGate &g : layer.couplers) {
            g.tau = 1.0;
        }
    }
    return out;
}

std::optional<double> uniform_transmission(const LayeredCircuit &c) {
    double total = 1.0;
    for (const Layer &layer : c.layers) {
        std::optional<double> layer_tau;
        int covered = 0;
        for (const CouplerGate &g : layer.couplers) {
            covered += 2;
            if (layer_tau && *layer_tau != g.tau) {
                return std::nullopt;
            }
            layer_tau = g.tau;
        }
        if (covered < c.modes) {
            if (layer_tau && *layer_tau != layer.idle_tau) {
                return std::nullopt;
            }
            layer_tau = layer.idle_tau;
        }
        total *= layer_tau.value_or(1.0);
    }
    return total;
}

}  // namespace lossybs
