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
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lossybs/cli/config.h"
#include "lossybs/numerics/distribution.h"

namespace lossybs::cli {

/// {"n":[...],"regime":"..."} or n0,n1,...; one line, newline-terminated.
void write_sample(std::ostream &out, const FockSample &s, SampleFormat format, const std::string &regime);

struct SampleFile {
    std::vector<FockSample> samples;
    std::vector<std::string> regimes;  // empty strings for csv
};

/// Parses a sample stream. Blank lines are skipped; anything else malformed, or a
/// line whose mode count differs from the first, throws InputError naming the line.
SampleFile read_samples(std::istream &in, SampleFormat format, const std::string &source = "samples");
SampleFile read_samples(const std::filesystem::path &path, SampleFormat format);

/// Guesses the format from the extension (.csv, otherwise jsonl).
SampleFormat format_for_path(const std::filesystem::path &path);

/// {"outcomes": [{"n": [...], "p": w}, ...]}
nlohmann::json distribution_to_json(const Distribution &d);
Distribution distribution_from_json(const nlohmann::json &j);

}  // namespace lossybs::cli
