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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lossybs/circuit/thresholds.h"

namespace lossybs::cli {

enum class Command { Plan, Sample, Validate, Stats };
enum class SampleFormat { Jsonl, Csv };
enum class SampleMode { Auto, Thermal, Mps, Oracle, Scattershot };

Command parse_command(const std::string &s);
SampleFormat parse_format(const std::string &s);
SampleMode parse_mode(const std::string &s);
const char *command_name(Command c);
const char *format_name(SampleFormat f);
const char *mode_name(SampleMode m);

struct RunConfig {
    Command command = Command::Plan;
    std::filesystem::path circuit_path;
    PlanParameters params;
    bool photons_given = false;
    bool tau_given = false;
    /// Per-coupler loss x used for the thermalization depth; defaults to 1 - tau.
    std::optional<double> coupler_loss;
    std::optional<AlgebraicLossParams> algebraic;

    std::size_t samples = 1000;
    uint64_t seed = 0;
    std::filesystem::path output_path;  // empty: stdout
    SampleFormat format = SampleFormat::Jsonl;
    SampleMode mode = SampleMode::Auto;
    /// Sampler used behind the heralds in scattershot mode (auto, thermal, mps or oracle).
    SampleMode scattershot_inner = SampleMode::Auto;
    double herald_lambda = 0.1;
    std::optional<double> lambda;  // thermal input override
    std::vector<int> input_modes;  // default 0..N-1
    int workers = 1;
    int max_bond = 4096;

    // stats
    std::filesystem::path input_path;
    std::filesystem::path reference_path;

    // validate
    std::optional<double> two_kappa_squared;
    std::optional<int> validate_photons;
    std::optional<std::size_t> validate_samples;
};

/// Parses a config object; relative paths resolve against base_dir.
/// Field errors throw InputError naming the JSON path.
RunConfig config_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir = {});
/// Reads and parses a config file; JSON syntax errors report line and column.
RunConfig load_config(const std::filesystem::path &path);
nlohmann::json config_to_json(const RunConfig &cfg);

/// Applies LOSSYBS_COMMAND, LOSSYBS_SEED, LOSSYBS_SAMPLES, LOSSYBS_MODE, LOSSYBS_OUT,
/// LOSSYBS_FORMAT and LOSSYBS_WORKERS when set.
void apply_env_overrides(RunConfig &cfg);

/// 64-bit FNV-1a of the canonical JSON dump of the config.
uint64_t config_hash(const RunConfig &cfg);

}  // namespace lossybs::cli
