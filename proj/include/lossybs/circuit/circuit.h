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

#include <optional>
#include <vector>

#include "lossybs/numerics/linalg.h"
#include "lossybs/numerics/random.h"

namespace lossybs {

/// Two-mode coupler on modes (mode, mode + 1).
///
/// The unitary block is the beamsplitter-with-phase
///   [[cos t, e^{i p} sin t], [-e^{-i p} sin t, cos t]]
/// and the gate multiplies it by sqrt(tau), tau being the intensity transmission.
struct CouplerGate {
    int mode = 0;
    double theta = 0.0;
    double phi = 0.0;
    double tau = 1.0;

    Eigen::Matrix2cd block() const;
    bool operator==(const CouplerGate &) const = default;
};

/// One layer: disjoint couplers act first, then a phase e^{i phases[j]} on every mode.
/// Modes not covered by a coupler are attenuated by sqrt(idle_tau).
struct Layer {
    std::vector<double> phases;  // empty means all zero
    std::vector<CouplerGate> couplers;
    double idle_tau = 1.0;

    bool operator==(const Layer &) const = default;
};

/// Layered planar interferometer. Layers are listed in the order light traverses them.
struct LayeredCircuit {
    int modes = 0;
    std::vector<Layer> layers;

    int depth() const {
        return static_cast<int>(layers.size());
    }
    /// Throws InputError on out-of-range or overlapping gates, bad phases or transmissions.
    void validate() const;
    bool operator==(const LayeredCircuit &) const = default;
};

Eigen::Matrix2cd beamsplitter_block(double theta, double phi);

/// Matrix of a single layer: diag(e^{i phase}) * (couplers (+) idle attenuation).
ComplexMatrix layer_matrix(const LayeredCircuit &c, int layer);

/// A = L_D ... L_2 L_1, so that output amplitudes are A times input amplitudes.
ComplexMatrix transfer_matrix(const LayeredCircuit &c);

/// Brick pattern: even layers couple (0,1),(2,3),..., odd layers (1,2),(3,4),...
/// Each block is Haar on U(2), stored as a beamsplitter plus output phases.
LayeredCircuit random_brickwork(int m, int depth, double tau, RandomStream &rng);

/// Same gates with every transmission set to one.
LayeredCircuit lossless_copy(const LayeredCircuit &c);

/// Product over layers of the per-layer transmission, if every layer attenuates
/// all modes equally; nullopt otherwise.
std::optional<double> uniform_transmission(const LayeredCircuit &c);

}  // namespace lossybs
