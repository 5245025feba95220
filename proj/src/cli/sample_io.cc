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

#include "lossybs/cli/sample_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "lossybs/errors.h"

namespace lossybs::cli {
namespace {

[[noreturn]] void line_error(const std::string &source, std::size_t line, const std::string &what) {
    throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

std::vector<int> parse_csv_line(const std::string &text, const std::string &source, std::size_t line) {
    std::vector<int> counts;
    const char *p = text.data();
    const char *end = p + text.size();
    while (end > p && (end[-1] == '\r' || end[-1] == ' ')) {
        --end;
    }
    for (;;) {
        int v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc() || v < 0) {
            line_error(source, line, "expected non-negative integer counts separated by commas");
        }
        counts.push_back(v);
        p = next;
        if (p == end) {
            break;
        }
        if (*p != ',') {
            line_error(source, line, "unexpected character '" + std::string(1, *p) + "'");
        }
        ++p;
    }
    return counts;
}

}  // namespace

void write_sample(std::ostream &out, const FockSample &s, SampleFormat format, const std::string &regime) {
    if (format == SampleFormat::Csv) {
        for (std::size_t i = 0; i < s.counts.size(); ++i) {
            if (i) out << ',';
            out << s.counts[i];
        }
        out << '\n';
        return;
    }
    out << "{\"n\":[";
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
        if (i) out << ',';
        out << s.counts[i];
    }
    out << "],\"regime\":\"" << regime << "\"}\n";
}

SampleFile read_samples(std::istream &in, SampleFormat format, const std::string &source) {
    SampleFile file;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        FockSample s;
        std::string regime;
        if (format == SampleFormat::Csv) {
            s.counts = parse_csv_line(text, source, line);
        } else {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(text);
            } catch (const nlohmann::json::parse_error &e) {
                line_error(source, line, std::string("invalid JSON: ") + e.what());
            }
            if (!j.is_object() || !j.contains("n") || !j["n"].is_array()) {
                line_error(source, line, "expected an object with an array field \"n\"");
            }
            for (const auto &v : j["n"]) {
                if (!v.is_number_integer() || v.get<int64_t>() < 0) {
                    line_error(source, line, "\"n\" entries must be non-negative integers");
                }
                s.counts.push_back(v.get<int>());
            }
            if (j.contains("regime")) {
                if (!j["regime"].is_string()) {
                    line_error(source, line, "\"regime\" must be a string");
                }
                regime = j["regime"].get<std::string>();
            }
        }
        if (s.counts.empty()) {
            line_error(source, line, "empty outcome");
        }
        if (!file.samples.empty() && s.counts.size() != file.samples.front().counts.size()) {
            line_error(source, line,
                       "outcome has " + std::to_string(s.counts.size()) + " modes, expected " +
                           std::to_string(file.samples.front().counts.size()));
        }
        file.samples.push_back(std::move(s));
        file.regimes.push_back(std::move(regime));
    }
    return file;
}

SampleFile read_samples(const std::filesystem::path &path, SampleFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open sample file " + path.string());
    }
    return read_samples(in, format, path.string());
}

SampleFormat format_for_path(const std::filesystem::path &path) {
    return path.extension() == ".csv" ? SampleFormat::Csv : SampleFormat::Jsonl;
}

nlohmann::json distribution_to_json(const Distribution &d) {
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto &[outcome, p] : d) {
        outcomes.push_back({{"n", outcome.counts}, {"p", p}});
    }
    return {{"outcomes", outcomes}};
}

Distribution distribution_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("outcomes") || !j["outcomes"].is_array()) {
        throw InputError("distribution: expected {\"outcomes\": [...]}");
    }
    Distribution d;
    const auto &outcomes = j["outcomes"];
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto &o = outcomes[i];
        const std::string where = "distribution: outcomes[" + std::to_string(i) + "]";
        if (!o.is_object() || !o.contains("n") || !o.contains("p") || !o["n"].is_array() || !o["p"].is_number()) {
            throw InputError(where + ": expected {\"n\": [...], \"p\": number}");
        }
        FockSample s;
        for (const auto &v : o["n"]) {
            if (!v.is_number_integer() || v.get<int64_t>() < 0) {
                throw InputError(where + ": counts must be non-negative integers");
            }
            s.counts.push_back(v.get<int>());
        }
        d.add(s, o["p"].get<double>());
    }
    return d;
}

}  // namespace lossybs::cli
