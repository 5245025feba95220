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

#include <exception>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lossybs/circuit/circuit.h"
#include "lossybs/cli/config.h"
#include "lossybs/numerics/distribution.h"
#include "lossybs/numerics/random.h"

namespace lossybs::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitModel = 2, kExitCapacity = 3 };

/// InputError and JSON errors map to usage, ModelError to model violation, CapacityError to capacity.
int exit_code_for(const std::exception &e);

/// Thresholds for the configured parameters: thermalization depth, D*, mu_effective,
/// regime, and the gamma/beta verdict when algebraic loss parameters are present.
nlohmann::json run_plan(const RunConfig &cfg);

/// Thread-safe source of independent samples.
struct PreparedSampler {
    std::string regime;
    std::function<FockSample(RandomStream &)> draw;
    nlohmann::json details;
};

/// Builds the sampler for a mode (auto dispatches on the plan) and input modes.
PreparedSampler prepare_sampler(const RunConfig &cfg, const LayeredCircuit &c, SampleMode mode,
                                const std::vector<int> &inputs);

/// count draws; worker w takes a contiguous block with root.split(w).
std::vector<FockSample> draw_samples(const PreparedSampler &s, std::size_t count, const RandomStream &root,
                                     int workers);

struct SampleRunResult {
    std::string regime;
    std::size_t written = 0;
    nlohmann::json meta;
};

/// Writes cfg.samples lines to cfg.output_path (or `fallback` when the path is empty)
/// and, for file output, the metadata sidecar <out>.meta.json.
SampleRunResult run_sample(const RunConfig &cfg, std::ostream &fallback);

nlohmann::json run_validate(const RunConfig &cfg);

/// Per-mode means, total-photon histogram, optional TVD against cfg.reference_path
/// (a sample file, or a {"outcomes": ...} distribution when it ends in .json).
nlohmann::json run_stats(const RunConfig &cfg);

}  // namespace lossybs::cli
