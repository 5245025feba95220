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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "lossybs/circuit/circuit.h"
#include "lossybs/mps/mps_state.h"

namespace lossybs {

/// Keeps each of n photons independently with probability mu; returns the 0/1 survival pattern.
std::vector<int> lossy_input_sample(int n, double mu, RandomStream &rng);

struct SimulationOptions {
    std::optional<int> cutoff;  // defaults to the photon count (at least 1)
    int max_bond = 4096;
    bool parallel_layers = true;
};

struct SimulationResult {
    MPSState state;
    int peak_bond = 1;
    int max_mpo_rank = 1;
    bool growth_bound_ok = true;  // every coupler: new bond <= old * (d+1)^2
    bool depth_bound_ok = true;   // peak bond <= (d+1)^(2D)
};

/// Runs a lossless layered circuit on a 0/1 input pattern of length c.modes.
/// Throws ModelError if any gate or idle mode carries loss, CapacityError past max_bond.
SimulationResult simulate_circuit(const LayeredCircuit &c, std::span<const int> pattern,
                                  const SimulationOptions &opts = {});

/// Uniform-loss sampler: thins the photons on input_modes with mu, evolves the
/// surviving pattern through the lossless circuit and samples by the chain rule.
/// Final states are cached per surviving pattern.
class MpsSampler {
   public:
    MpsSampler(LayeredCircuit lossless, std::vector<int> input_modes, double mu, SimulationOptions opts = {});

    FockSample sample(RandomStream &rng) const;
    std::vector<FockSample> sample_batch(std::size_t count, const RandomStream &rng_root, int workers) const;
    std::vector<FockSample> sample_batch_serial(std::size_t count, const RandomStream &rng_root) const;

    /// Largest bond dimension over the states simulated so far.
    int peak_bond() const;

   private:
    std::shared_ptr<const SimulationResult> state_for(const std::vector<int> &pattern) const;

    LayeredCircuit circuit_;
    std::vector<int> input_modes_;
    double mu_;
    SimulationOptions opts_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<int>, std::shared_ptr<const SimulationResult>> cache_;
};

}  // namespace lossybs
