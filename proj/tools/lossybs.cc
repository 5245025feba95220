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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lossybs/cli/commands.h"
#include "lossybs/cli/config.h"
#include "lossybs/errors.h"

using namespace lossybs::cli;

int main(int argc, char **argv) {
    CLI::App app{"Lossy boson sampling: thresholds, thermal and MPS samplers, exact oracles"};
    std::string config_path;
    std::optional<std::string> command, mode, out, format, input, reference;
    std::optional<uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<int> workers;
    app.add_option("--config", config_path, "JSON run config");
    app.add_option("--command", command, "plan | sample | validate | stats");
    app.add_option("--seed", seed, "64-bit master seed");
    app.add_option("--samples", samples, "number of samples");
    app.add_option("--mode", mode, "auto | thermal | mps | oracle | scattershot");
    app.add_option("--out", out, "output file (default or \"-\": stdout)");
    app.add_option("--format", format, "jsonl | csv");
    app.add_option("--workers", workers, "sampling threads");
    app.add_option("--input", input, "sample file for stats");
    app.add_option("--reference", reference, "reference samples or distribution for stats");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        apply_env_overrides(cfg);
        if (command) cfg.command = parse_command(*command);
        if (seed) cfg.seed = *seed;
        if (samples) cfg.samples = *samples;
        if (mode) cfg.mode = parse_mode(*mode);
        if (out) cfg.output_path = *out == "-" ? std::string() : *out;
        if (format) cfg.format = parse_format(*format);
        if (input) cfg.input_path = *input;
        if (reference) cfg.reference_path = *reference;
        if (workers) {
            if (*workers < 1) throw lossybs::InputError("--workers must be at least 1");
            cfg.workers = *workers;
        }

        switch (cfg.command) {
            case Command::Plan:
                std::cout << run_plan(cfg).dump(2) << '\n';
                break;
            case Command::Sample: {
                const SampleRunResult r = run_sample(cfg, std::cout);
                if (!cfg.output_path.empty()) {
                    std::cerr << "wrote " << r.written << " samples (" << r.regime << ") to "
                              << cfg.output_path.string() << '\n';
                }
                break;
            }
            case Command::Validate:
                std::cout << run_validate(cfg).dump(2) << '\n';
                break;
            case Command::Stats:
                std::cout << run_stats(cfg).dump(2) << '\n';
                break;
        }
    } catch (const std::exception &e) {
        std::cerr << "lossybs: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}
