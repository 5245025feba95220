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

#include "lossybs/mps/simulate.h"

#include <cmath>
#include <numeric>
#include <string>

#include "lossybs/errors.h"

namespace lossybs {

std::vector<int> lossy_input_sample(int n, double mu, RandomStream &rng) {
    if (n < 0) {
        throw InputError("lossy_input_sample: negative photon count");
    }
    if (!(mu >= 0.0 && mu <= 1.0)) {
        throw InputError("lossy_input_sample: mu must lie in [0, 1]");
    }
    std::vector<int> kept(n);
    for (int &k : kept) {
        k = rng.uniform() < mu ? 1 : 0;
    }
    return kept;
}

SimulationResult simulate_circuit(const LayeredCircuit &c, std::span<const int> pattern,
                                  const SimulationOptions &opts) {
    c.validate();
    if (static_cast<int>(pattern.size()) != c.modes) {
        throw InputError("simulate_circuit: pattern length " + std::to_string(pattern.size()) + " != modes " +
                         std::to_string(c.modes));
    }
    for (const auto &layer : c.layers) {
        if (layer.idle_tau != 1.0) {
            throw ModelError("simulate_circuit: circuit has idle-mode loss; thin the input instead");
        }
        for (const auto &g : layer.couplers) {
            if (g.tau != 1.0) {
                throw ModelError("simulate_circuit: circuit has lossy couplers; thin the input instead");
            }
        }
    }
    const int photons = std::accumulate(pattern.begin(), pattern.end(), 0);
    const int d = opts.cutoff.value_or(std::max(1, photons));

    SimulationResult result;
    result.state = init_input(pattern, d);
    MPSState &s = result.state;
    std::map<std::pair<double, double>, CouplerMPO> mpos;
    const double growth = std::pow(d + 1.0, 2);

    for (const auto &layer : c.layers) {
        std::vector<const CouplerMPO *> layer_mpos;
        for (const auto &g : layer.couplers) {
            auto key = std::make_pair(g.theta, g.phi);
            auto it = mpos.find(key);
            if (it == mpos.end()) {
                it = mpos.emplace(key, make_coupler_mpo(g.block(), d)).first;
            }
            layer_mpos.push_back(&it->second);
            result.max_mpo_rank = std::max(result.max_mpo_rank, it->second.rank());
        }
        // Couplers in a layer are disjoint; each touches only its own bond and two sites.
        const int count = static_cast<int>(layer.couplers.size());
        std::vector<CouplerUpdate> updates(count);
        bool failed = false;
        std::string failure;
        int failure_kind = 0;
#pragma omp parallel for schedule(dynamic) if (opts.parallel_layers && count > 1)
        for (int j = 0; j < count; ++j) {
            try {
                updates[j] = apply_coupler(s, layer.couplers[j].mode, *layer_mpos[j], opts.max_bond);
            } catch (const CapacityError &e) {
#pragma omp critical
                {
                    failed = true;
                    failure_kind = std::max(failure_kind, 2);
                    failure = e.what();
                }
            } catch (const std::exception &e) {
#pragma omp critical
                {
                    failed = true;
                    if (failure_kind < 1) {
                        failure_kind = 1;
                        failure = e.what();
                    }
                }
            }
        }
        if (failed) {
            if (failure_kind == 2) {
                throw CapacityError(failure);
            }
            throw InputError(failure);
        }
        for (const auto &u : updates) {
            if (u.bond_after > u.bond_before * growth) {
                result.growth_bound_ok = false;
            }
            result.peak_bond = std::max(result.peak_bond, u.bond_after);
        }
        if (!layer.phases.empty()) {
            for (int i = 0; i < c.modes; ++i) {
                if (layer.phases[i] != 0.0) {
                    apply_phase(s, i, layer.phases[i]);
                }
            }
        }
    }
    result.depth_bound_ok = result.peak_bond <= std::pow(d + 1.0, 2.0 * c.depth());
    canonicalize(s);
    return result;
}

MpsSampler::MpsSampler(LayeredCircuit lossless, std::vector<int> input_modes, double mu, SimulationOptions opts)
    : circuit_(std::move(lossless)), input_modes_(std::move(input_modes)), mu_(mu), opts_(opts) {
    circuit_.validate();
    if (!(mu >= 0.0 && mu <= 1.0)) {
        throw InputError("MpsSampler: mu must lie in [0, 1]");
    }
    std::vector<bool> used(circuit_.modes, false);
    for (int m : input_modes_) {
        if (m < 0 || m >= circuit_.modes || used[m]) {
            throw InputError("MpsSampler: input modes must be distinct and in range");
        }
        used[m] = true;
    }
    for (const auto &layer : circuit_.layers) {
        if (layer.idle_tau != 1.0) {
            throw ModelError("MpsSampler: circuit must be lossless");
        }
        for (const auto &g : layer.couplers) {
            if (g.tau != 1.0) {
                throw ModelError("MpsSampler: circuit must be lossless");
            }
        }
    }
}

std::shared_ptr<const SimulationResult> MpsSampler::state_for(const std::vector<int> &pattern) const {
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(pattern);
        if (it != cache_.end()) {
            return it->second;
        }
    }
    SimulationOptions inner = opts_;
    inner.parallel_layers = false;
    auto result = std::make_shared<const SimulationResult>(simulate_circuit(circuit_, pattern, inner));
    std::lock_guard lock(mutex_);
    return cache_.emplace(pattern, std::move(result)).first->second;
}

FockSample MpsSampler::sample(RandomStream &rng) const {
    const std::vector<int> kept = lossy_input_sample(static_cast<int>(input_modes_.size()), mu_, rng);
    std::vector<int> pattern(circuit_.modes, 0);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        pattern[input_modes_[i]] = kept[i];
    }
    const auto result = state_for(pattern);
    for (;;) {
        if (auto s = lossybs::sample(result->state, rng)) {
            return *std::move(s);
        }
    }
}

std::vector<FockSample> MpsSampler::sample_batch_serial(std::size_t count, const RandomStream &rng_root) const {
    std::vector<FockSample> out(count);
    RandomStream rng = rng_root.split(0);
    for (auto &s : out) {
        s = sample(rng);
    }
    return out;
}

std::vector<FockSample> MpsSampler::sample_batch(std::size_t count, const RandomStream &rng_root,
                                                 int workers) const {
    workers = std::max(1, workers);
    std::vector<FockSample> out(count);
    const std::size_t block = (count + workers - 1) / workers;
    bool capacity = false;
    std::string message;
#pragma omp parallel for num_threads(workers) schedule(static, 1)
    for (int w = 0; w < workers; ++w) {
        try {
            RandomStream rng = rng_root.split(static_cast<uint64_t>(w));
            const std::size_t begin = std::min(count, w * block);
            const std::size_t end = std::min(count, begin + block);
            for (std::size_t i = begin; i < end; ++i) {
                out[i] = sample(rng);
            }
        } catch (const CapacityError &e) {
#pragma omp critical
            {
                capacity = true;
                message = e.what();
            }
        }
    }
    if (capacity) {
        throw CapacityError(message);
    }
    return out;
}

int MpsSampler::peak_bond() const {
    std::lock_guard lock(mutex_);
    int best = 1;
    for (const auto &[pattern, result] : cache_) {
        best = std::max(best, result->peak_bond);
    }
    return best;
}

}  // namespace lossybs
