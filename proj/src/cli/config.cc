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

#include "lossybs/cli/config.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lossybs/errors.h"

namespace lossybs::cli {
namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string &path, const std::string &what) {
    throw InputError("config: field '" + path + "': " + what);
}

double get_number(const json &j, const std::string &path) {
    if (!j.is_number()) {
        field_error(path, "expected a number");
    }
    return j.get<double>();
}

int64_t get_integer(const json &j, const std::string &path) {
    if (!j.is_number_integer()) {
        field_error(path, "expected an integer");
    }
    return j.get<int64_t>();
}

std::string get_string(const json &j, const std::string &path) {
    if (!j.is_string()) {
        field_error(path, "expected a string");
    }
    return j.get<std::string>();
}

uint64_t parse_seed(const std::string &s, const std::string &where) {
    try {
        std::size_t used = 0;
        const uint64_t v = std::stoull(s, &used, 0);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw InputError(where + ": '" + s + "' is not an unsigned 64-bit integer");
    }
}

int64_t parse_int(const std::string &s, const std::string &where) {
    try {
        std::size_t used = 0;
        const int64_t v = std::stoll(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw InputError(where + ": '" + s + "' is not an integer");
    }
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) {
        return base / path;
    }
    return path;
}

void check_known(const json &j, const std::string &prefix, std::initializer_list<const char *> known) {
    for (const auto &[key, value] : j.items()) {
        bool ok = false;
        for (const char *k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            field_error(prefix + key, "unknown field");
        }
    }
}

}  // namespace

Command parse_command(const std::string &s) {
    if (s == "plan") return Command::Plan;
    if (s == "sample") return Command::Sample;
    if (s == "validate") return Command::Validate;
    if (s == "stats") return Command::Stats;
    throw InputError("unknown command '" + s + "' (plan, sample, validate, stats)");
}

SampleFormat parse_format(const std::string &s) {
    if (s == "jsonl") return SampleFormat::Jsonl;
    if (s == "csv") return SampleFormat::Csv;
    throw InputError("unknown format '" + s + "' (jsonl, csv)");
}

SampleMode parse_mode(const std::string &s) {
    if (s == "auto") return SampleMode::Auto;
    if (s == "thermal") return SampleMode::Thermal;
    if (s == "mps") return SampleMode::Mps;
    if (s == "oracle") return SampleMode::Oracle;
    if (s == "scattershot") return SampleMode::Scattershot;
    throw InputError("unknown mode '" + s + "' (auto, thermal, mps, oracle, scattershot)");
}

const char *command_name(Command c) {
    switch (c) {
        case Command::Plan: return "plan";
        case Command::Sample: return "sample";
        case Command::Validate: return "validate";
        case Command::Stats: return "stats";
    }
    return "?";
}

const char *format_name(SampleFormat f) {
    return f == SampleFormat::Jsonl ? "jsonl" : "csv";
}

const char *mode_name(SampleMode m) {
    switch (m) {
        case SampleMode::Auto: return "auto";
        case SampleMode::Thermal: return "thermal";
        case SampleMode::Mps: return "mps";
        case SampleMode::Oracle: return "oracle";
        case SampleMode::Scattershot: return "scattershot";
    }
    return "?";
}

RunConfig config_from_json(const json &j, const std::filesystem::path &base_dir) {
    if (!j.is_object()) {
        throw InputError("config: top level must be an object");
    }
    check_known(j, "", {"command", "circuit", "params", "samples", "seed", "out", "format", "mode", "scattershot",
                        "lambda", "inputs", "workers", "max_bond", "input", "reference", "validate"});
    RunConfig cfg;
    if (j.contains("command")) cfg.command = parse_command(get_string(j["command"], "command"));
    if (j.contains("circuit")) cfg.circuit_path = resolve(base_dir, get_string(j["circuit"], "circuit"));
    if (j.contains("params")) {
        const json &p = j["params"];
        if (!p.is_object()) field_error("params", "expected an object");
        check_known(p, "params.", {"photons", "modes", "k", "gamma", "epsilon", "tau", "x", "depth", "algebraic"});
        auto &pp = cfg.params;
        if (p.contains("modes")) pp.modes = static_cast<int>(get_integer(p["modes"], "params.modes"));
        if (p.contains("k")) pp.k = get_number(p["k"], "params.k");
        if (p.contains("gamma")) pp.gamma = get_number(p["gamma"], "params.gamma");
        if (p.contains("epsilon")) pp.epsilon = get_number(p["epsilon"], "params.epsilon");
        if (p.contains("tau")) {
            pp.tau = get_number(p["tau"], "params.tau");
            cfg.tau_given = true;
        }
        if (p.contains("x")) cfg.coupler_loss = get_number(p["x"], "params.x");
        if (p.contains("depth")) pp.depth = static_cast<int>(get_integer(p["depth"], "params.depth"));
        if (p.contains("photons")) {
            pp.photons = static_cast<int>(get_integer(p["photons"], "params.photons"));
            cfg.photons_given = true;
        } else if (p.contains("k") || p.contains("gamma")) {
            pp.photons = PlanParameters::derive_photons(pp.k, pp.gamma, pp.modes);
        }
        if (p.contains("algebraic")) {
            const json &a = p["algebraic"];
            if (!a.is_object()) field_error("params.algebraic", "expected an object");
            check_known(a, "params.algebraic.", {"scale", "exponent"});
            AlgebraicLossParams alg;
            if (a.contains("scale")) alg.scale = get_number(a["scale"], "params.algebraic.scale");
            if (a.contains("exponent")) alg.exponent = get_number(a["exponent"], "params.algebraic.exponent");
            cfg.algebraic = alg;
        }
    }
    if (j.contains("samples")) {
        const int64_t n = get_integer(j["samples"], "samples");
        if (n < 0) field_error("samples", "must be non-negative");
        cfg.samples = static_cast<std::size_t>(n);
    }
    if (j.contains("seed")) {
        const json &s = j["seed"];
        if (s.is_number_unsigned()) {
            cfg.seed = s.get<uint64_t>();
        } else if (s.is_string()) {
            cfg.seed = parse_seed(s.get<std::string>(), "config: field 'seed'");
        } else {
            field_error("seed", "expected an unsigned integer");
        }
    }
    if (j.contains("out")) cfg.output_path = resolve(base_dir, get_string(j["out"], "out"));
    if (j.contains("format")) cfg.format = parse_format(get_string(j["format"], "format"));
    if (j.contains("mode")) cfg.mode = parse_mode(get_string(j["mode"], "mode"));
    if (j.contains("scattershot")) {
        const json &s = j["scattershot"];
        if (!s.is_object()) field_error("scattershot", "expected an object");
        check_known(s, "scattershot.", {"herald_lambda", "sampler"});
        if (s.contains("herald_lambda")) {
            cfg.herald_lambda = get_number(s["herald_lambda"], "scattershot.herald_lambda");
        }
        if (s.contains("sampler")) {
            cfg.scattershot_inner = parse_mode(get_string(s["sampler"], "scattershot.sampler"));
            if (cfg.scattershot_inner == SampleMode::Scattershot) {
                field_error("scattershot.sampler", "cannot itself be scattershot");
            }
        }
    }
    if (j.contains("lambda")) cfg.lambda = get_number(j["lambda"], "lambda");
    if (j.contains("inputs")) {
        const json &in = j["inputs"];
        if (!in.is_array()) field_error("inputs", "expected an array of mode indices");
        for (std::size_t i = 0; i < in.size(); ++i) {
            cfg.input_modes.push_back(
                static_cast<int>(get_integer(in[i], "inputs[" + std::to_string(i) + "]")));
        }
    }
    if (j.contains("workers")) cfg.workers = static_cast<int>(get_integer(j["workers"], "workers"));
    if (j.contains("max_bond")) cfg.max_bond = static_cast<int>(get_integer(j["max_bond"], "max_bond"));
    if (j.contains("input")) cfg.input_path = resolve(base_dir, get_string(j["input"], "input"));
    if (j.contains("reference")) cfg.reference_path = resolve(base_dir, get_string(j["reference"], "reference"));
    if (j.contains("validate")) {
        const json &v = j["validate"];
        if (!v.is_object()) field_error("validate", "expected an object");
        check_known(v, "validate.", {"two_kappa_squared", "photons", "samples"});
        if (v.contains("two_kappa_squared")) {
            cfg.two_kappa_squared = get_number(v["two_kappa_squared"], "validate.two_kappa_squared");
        }
        if (v.contains("photons")) {
            cfg.validate_photons = static_cast<int>(get_integer(v["photons"], "validate.photons"));
        }
        if (v.contains("samples")) {
            cfg.validate_samples = static_cast<std::size_t>(get_integer(v["samples"], "validate.samples"));
        }
    }
    if (cfg.workers < 1) field_error("workers", "must be at least 1");
    if (cfg.max_bond < 1) field_error("max_bond", "must be at least 1");
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("config: cannot open " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        // nlohmann reports "at line L, column C" in what().
        throw InputError("config: " + path.string() + ": " + e.what());
    }
    return config_from_json(j, path.parent_path());
}

nlohmann::json config_to_json(const RunConfig &cfg) {
    json params = {{"photons", cfg.params.photons}, {"modes", cfg.params.modes},  {"k", cfg.params.k},
                   {"gamma", cfg.params.gamma},     {"epsilon", cfg.params.epsilon}, {"tau", cfg.params.tau},
                   {"depth", cfg.params.depth}};
    if (cfg.coupler_loss) params["x"] = *cfg.coupler_loss;
    if (cfg.algebraic) params["algebraic"] = {{"scale", cfg.algebraic->scale}, {"exponent", cfg.algebraic->exponent}};
    json j = {{"command", command_name(cfg.command)},
              {"circuit", cfg.circuit_path.string()},
              {"params", params},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"format", format_name(cfg.format)},
              {"mode", mode_name(cfg.mode)},
              {"workers", cfg.workers},
              {"max_bond", cfg.max_bond},
              {"inputs", cfg.input_modes}};
    if (cfg.mode == SampleMode::Scattershot) {
        j["scattershot"] = {{"herald_lambda", cfg.herald_lambda}, {"sampler", mode_name(cfg.scattershot_inner)}};
    }
    if (cfg.lambda) j["lambda"] = *cfg.lambda;
    return j;
}

void apply_env_overrides(RunConfig &cfg) {
    auto env = [](const char *name) -> std::optional<std::string> {
        const char *v = std::getenv(name);
        if (v == nullptr || *v == '\0') return std::nullopt;
        return std::string(v);
    };
    if (auto v = env("LOSSYBS_COMMAND")) cfg.command = parse_command(*v);
    if (auto v = env("LOSSYBS_SEED")) cfg.seed = parse_seed(*v, "LOSSYBS_SEED");
    if (auto v = env("LOSSYBS_SAMPLES")) {
        const int64_t n = parse_int(*v, "LOSSYBS_SAMPLES");
        if (n < 0) throw InputError("LOSSYBS_SAMPLES: must be non-negative");
        cfg.samples = static_cast<std::size_t>(n);
    }
    if (auto v = env("LOSSYBS_MODE")) cfg.mode = parse_mode(*v);
    if (auto v = env("LOSSYBS_OUT")) cfg.output_path = *v;
    if (auto v = env("LOSSYBS_FORMAT")) cfg.format = parse_format(*v);
    if (auto v = env("LOSSYBS_WORKERS")) {
        const int64_t n = parse_int(*v, "LOSSYBS_WORKERS");
        if (n < 1) throw InputError("LOSSYBS_WORKERS: must be at least 1");
        cfg.workers = static_cast<int>(n);
    }
}

uint64_t config_hash(const RunConfig &cfg) {
    const std::string text = config_to_json(cfg).dump();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace lossybs::cli
