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

#include "lossybs/cli/commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "lossybs/circuit/circuit_json.h"
#include "lossybs/circuit/loss.h"
#include "lossybs/cli/sample_io.h"
#include "lossybs/cli/validation.h"
#include "lossybs/errors.h"
#include "lossybs/mps/simulate.h"
#include "lossybs/oracle/oracle.h"
#include "lossybs/thermal/thermal_sampler.h"

namespace lossybs::cli {
namespace {

using nlohmann::json;

json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

// Parameters for the circuit at hand: modes and depth from the circuit, per-layer tau from
// the config or, failing that, from the circuit's uniform transmission.
PlanParameters circuit_params(const RunConfig &cfg, const LayeredCircuit &c, int photons) {
    PlanParameters p = cfg.params;
    p.modes = c.modes;
    p.depth = c.depth();
    p.photons = std::max(1, photons);
    if (!cfg.tau_given) {
        const auto mu = uniform_transmission(c);
        p.tau = (mu && c.depth() > 0 && *mu > 0.0) ? std::pow(*mu, 1.0 / c.depth()) : 1.0;
        p.tau = std::min(1.0, p.tau);
    }
    return p;
}

std::vector<int> default_inputs(const RunConfig &cfg, int modes) {
    std::vector<int> inputs = cfg.input_modes;
    if (inputs.empty()) {
        if (cfg.params.photons > modes) {
            throw InputError("sample: " + std::to_string(cfg.params.photons) + " photons need at least as many modes, circuit has " +
                             std::to_string(modes));
        }
        inputs.resize(cfg.params.photons);
        std::iota(inputs.begin(), inputs.end(), 0);
    } else if (cfg.photons_given && static_cast<int>(inputs.size()) != cfg.params.photons) {
        throw InputError("sample: params.photons disagrees with the number of input modes");
    }
    return inputs;
}

double require_uniform(const LayeredCircuit &c, const char *who) {
    const auto mu = uniform_transmission(c);
    if (!mu) {
        throw ModelError(std::string(who) + ": circuit loss is not uniform across modes; use mode=thermal");
    }
    return *mu;
}

// Transfer matrix of the lossless circuit with the input modes moved to the front.
ComplexMatrix inputs_first(const ComplexMatrix &u, const std::vector<int> &inputs) {
    std::vector<int> order = inputs;
    std::vector<bool> used(u.cols(), false);
    for (int i : inputs) used[i] = true;
    for (int i = 0; i < u.cols(); ++i) {
        if (!used[i]) order.push_back(i);
    }
    ComplexMatrix out(u.rows(), u.cols());
    for (int j = 0; j < u.cols(); ++j) {
        out.col(j) = u.col(order[j]);
    }
    return out;
}

void check_inputs(const std::vector<int> &inputs, int modes) {
    std::vector<bool> used(modes, false);
    for (int m : inputs) {
        if (m < 0 || m >= modes || used[m]) {
            throw InputError("sample: input modes must be distinct and lie in [0, " + std::to_string(modes) + ")");
        }
        used[m] = true;
    }
}

PreparedSampler thermal_sampler(const RunConfig &cfg, const LayeredCircuit &c, const std::vector<int> &inputs) {
    const ComplexMatrix a = transfer_matrix(c);
    const NonuniformFactor f = factor_nonuniform(decompose_losses(a));
    const double lambda = cfg.lambda.value_or(f.mu_max);
    auto sampler = std::make_shared<const ThermalSampler>(f.residual.recombine(), ThermalParams(lambda), inputs,
                                                          cfg.params.epsilon);
    PreparedSampler p;
    p.regime = "thermal";
    p.draw = [sampler](RandomStream &rng) { return sampler->sample(rng); };
    p.details = {{"lambda", lambda},
                 {"mu_max", f.mu_max},
                 {"constellation_size", sampler->constellation_size()},
                 {"bernoulli_trials", sampler->trials()}};
    return p;
}

PreparedSampler mps_sampler(const RunConfig &cfg, const LayeredCircuit &c, const std::vector<int> &inputs) {
    const double mu = require_uniform(c, "mps");
    SimulationOptions opts;
    opts.max_bond = cfg.max_bond;
    auto sampler = std::make_shared<const MpsSampler>(lossless_copy(c), inputs, mu, opts);
    PreparedSampler p;
    p.regime = "mps";
    p.draw = [sampler](RandomStream &rng) { return sampler->sample(rng); };
    p.details = {{"mu", mu}, {"max_bond", cfg.max_bond}};
    return p;
}

PreparedSampler oracle_sampler(const LayeredCircuit &c, const std::vector<int> &inputs) {
    const double mu = require_uniform(c, "oracle");
    const ComplexMatrix u = inputs_first(transfer_matrix(lossless_copy(c)), inputs);
    const Distribution d = lossy_exact_distribution(u, mu, static_cast<int>(inputs.size()));
    auto outcomes = std::make_shared<std::vector<FockSample>>();
    auto cumulative = std::make_shared<std::vector<double>>();
    double run = 0.0;
    for (const auto &[o, w] : d) {
        run += w;
        outcomes->push_back(o);
        cumulative->push_back(run);
    }
    PreparedSampler p;
    p.regime = "oracle";
    p.draw = [outcomes, cumulative](RandomStream &rng) {
        const double u = rng.uniform() * cumulative->back();
        auto it = std::upper_bound(cumulative->begin(), cumulative->end(), u);
        if (it == cumulative->end()) --it;
        return (*outcomes)[it - cumulative->begin()];
    };
    p.details = {{"mu", mu}, {"support", outcomes->size()}};
    return p;
}

}  // namespace

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const CapacityError *>(&e)) return kExitCapacity;
    if (dynamic_cast<const ModelError *>(&e)) return kExitModel;
    return kExitUsage;
}

json run_plan(const RunConfig &cfg) {
    PlanParameters p = cfg.params;
    if (!cfg.circuit_path.empty()) {
        const LayeredCircuit c = load_circuit(cfg.circuit_path);
        p = circuit_params(cfg, c, cfg.params.photons);
    }
    const SimulationPlan sp = plan(p);
    const double x = cfg.coupler_loss.value_or(1.0 - p.tau);
    const double d_tilde = thermalization_depth(p.photons, p.epsilon, x);
    json report = {{"photons", p.photons},
                   {"modes", p.modes},
                   {"depth", p.depth},
                   {"epsilon", p.epsilon},
                   {"tau", p.tau},
                   {"x", x},
                   {"thermalization_depth", finite_or_null(d_tilde)},
                   {"d_star", finite_or_null(sp.d_star)},
                   {"mu_effective", sp.mu_effective},
                   {"regime", regime_name(sp.regime)},
                   {"rationale", sp.rationale}};
    if (std::isinf(sp.d_star)) {
        report["note"] = "thermal regime unreachable";
    }
    if (cfg.algebraic) {
        const AlgebraicThreshold a = depth_threshold_algebraic(p, *cfg.algebraic);
        report["algebraic"] = {{"scale", cfg.algebraic->scale},
                               {"exponent", cfg.algebraic->exponent},
                               {"d_star", a.d_star},
                               {"gamma_over_beta", a.gamma_over_beta},
                               {"gamma_over_beta_below_two", a.asymptotically_simulable}};
    }
    return report;
}

PreparedSampler prepare_sampler(const RunConfig &cfg, const LayeredCircuit &c, SampleMode mode,
                                const std::vector<int> &inputs) {
    check_inputs(inputs, c.modes);
    json plan_json;
    if (mode == SampleMode::Auto) {
        const SimulationPlan sp = plan(circuit_params(cfg, c, static_cast<int>(inputs.size())));
        mode = sp.regime == Regime::Thermal ? SampleMode::Thermal : SampleMode::Mps;
        plan_json = {{"d_star", finite_or_null(sp.d_star)},
                     {"mu_effective", sp.mu_effective},
                     {"regime", regime_name(sp.regime)},
                     {"rationale", sp.rationale}};
    }
    PreparedSampler p;
    switch (mode) {
        case SampleMode::Thermal: p = thermal_sampler(cfg, c, inputs); break;
        case SampleMode::Mps: p = mps_sampler(cfg, c, inputs); break;
        case SampleMode::Oracle: p = oracle_sampler(c, inputs); break;
        default: throw InputError("prepare_sampler: unsupported mode");
    }
    if (!plan_json.is_null()) {
        p.details["plan"] = plan_json;
    }
    return p;
}

std::vector<FockSample> draw_samples(const PreparedSampler &s, std::size_t count, const RandomStream &root,
                                     int workers) {
    workers = std::max(1, workers);
    std::vector<FockSample> out(count);
    const std::size_t block = (count + workers - 1) / workers;
    std::exception_ptr error;
#pragma omp parallel for num_threads(workers) schedule(static, 1)
    for (int w = 0; w < workers; ++w) {
        try {
            RandomStream rng = root.split(static_cast<uint64_t>(w));
            const std::size_t begin = std::min(count, w * block);
            const std::size_t end = std::min(count, begin + block);
            for (std::size_t i = begin; i < end; ++i) {
                out[i] = s.draw(rng);
            }
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return out;
}

SampleRunResult run_sample(const RunConfig &cfg, std::ostream &fallback) {
    if (cfg.circuit_path.empty()) {
        throw InputError("sample: config needs a 'circuit' path");
    }
    const LayeredCircuit c = load_circuit(cfg.circuit_path);
    const RandomStream root(cfg.seed);
    std::vector<FockSample> samples;
    std::vector<std::string> regimes;
    json details;
    std::string regime;

    if (cfg.mode == SampleMode::Scattershot) {
        ThermalParams herald_check(cfg.herald_lambda);
        std::mutex mutex;
        std::map<std::vector<int>, std::shared_ptr<const PreparedSampler>> cache;
        // Each draw fixes its heralded inputs, then samples the circuit from them.
        auto inner = [&](RandomStream &rng) -> std::pair<FockSample, std::string> {
            const std::vector<int> heralded = herald_input_modes(c.modes, cfg.herald_lambda, rng);
            std::shared_ptr<const PreparedSampler> sub;
            {
                std::lock_guard lock(mutex);
                auto it = cache.find(heralded);
                if (it != cache.end()) sub = it->second;
            }
            if (!sub) {
                RunConfig sub_cfg = cfg;
                sub_cfg.photons_given = false;
                sub_cfg.params.photons = static_cast<int>(heralded.size());
                auto built = std::make_shared<const PreparedSampler>(
                    prepare_sampler(sub_cfg, c, cfg.scattershot_inner, heralded));
                std::lock_guard lock(mutex);
                sub = cache.emplace(heralded, built).first->second;
            }
            return {sub->draw(rng), sub->regime};
        };
        std::vector<std::pair<FockSample, std::string>> tagged(cfg.samples);
        const int workers = std::max(1, cfg.workers);
        const std::size_t block = (cfg.samples + workers - 1) / workers;
        std::exception_ptr error;
#pragma omp parallel for num_threads(workers) schedule(static, 1)
        for (int w = 0; w < workers; ++w) {
            try {
                RandomStream rng = root.split(static_cast<uint64_t>(w));
                const std::size_t begin = std::min(cfg.samples, w * block);
                const std::size_t end = std::min(cfg.samples, begin + block);
                for (std::size_t i = begin; i < end; ++i) {
                    tagged[i] = inner(rng);
                }
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        for (auto &[sample, r] : tagged) {
            samples.push_back(std::move(sample));
            regimes.push_back(std::move(r));
        }
        regime = "scattershot";
        details = {{"herald_lambda", cfg.herald_lambda},
                   {"sampler", mode_name(cfg.scattershot_inner)},
                   {"distinct_input_sets", cache.size()}};
    } else {
        const std::vector<int> inputs = default_inputs(cfg, c.modes);
        const PreparedSampler s = prepare_sampler(cfg, c, cfg.mode, inputs);
        samples = draw_samples(s, cfg.samples, root, cfg.workers);
        regimes.assign(samples.size(), s.regime);
        regime = s.regime;
        details = s.details;
    }

    std::ofstream file;
    std::ostream *out = &fallback;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw InputError("sample: cannot write " + cfg.output_path.string());
        }
        out = &file;
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        write_sample(*out, samples[i], cfg.format, regimes[i]);
    }
    out->flush();

    SampleRunResult result;
    result.regime = regime;
    result.written = samples.size();
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    const PlanParameters p = circuit_params(cfg, c, static_cast<int>(cfg.input_modes.empty() ? cfg.params.photons
                                                                                               : cfg.input_modes.size()));
    double d_star = depth_threshold_exponential(p);
    double d_tilde = std::numeric_limits<double>::quiet_NaN();
    const double x = cfg.coupler_loss.value_or(1.0 - p.tau);
    if (x >= 0.0 && x < 1.0 && p.epsilon > 0.0) {
        d_tilde = thermalization_depth(p.photons, p.epsilon, x);
    }
    result.meta = {{"config_hash", hash},
                   {"seed", cfg.seed},
                   {"samples", result.written},
                   {"format", format_name(cfg.format)},
                   {"mode", mode_name(cfg.mode)},
                   {"regime", regime},
                   {"workers", cfg.workers},
                   {"thresholds",
                    {{"d_star", finite_or_null(d_star)},
                     {"thermalization_depth", finite_or_null(d_tilde)},
                     {"mu_effective", std::pow(p.tau, p.depth)},
                     {"depth", p.depth}}},
                   {"sampler", details}};
    if (!cfg.output_path.empty()) {
        std::ofstream meta(cfg.output_path.string() + ".meta.json", std::ios::trunc);
        meta << result.meta.dump(2) << '\n';
    }
    return result;
}

json run_validate(const RunConfig &cfg) {
    ValidationOptions opts;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;
    if (cfg.two_kappa_squared) opts.two_kappa_squared = *cfg.two_kappa_squared;
    if (cfg.validate_photons) opts.oracle_photons = *cfg.validate_photons;
    if (cfg.validate_samples) opts.samples = *cfg.validate_samples;
    return report_to_json(run_validation_suite(opts));
}

json run_stats(const RunConfig &cfg) {
    if (cfg.input_path.empty()) {
        throw InputError("stats: config needs an 'input' sample file");
    }
    const SampleFile file = read_samples(cfg.input_path, format_for_path(cfg.input_path));
    json report = {{"input", cfg.input_path.string()}, {"samples", file.samples.size()}};
    if (file.samples.empty()) {
        report["modes"] = 0;
        return report;
    }
    const std::size_t modes = file.samples.front().modes();
    const double n = static_cast<double>(file.samples.size());
    std::vector<double> sum(modes, 0.0), sum_sq(modes, 0.0);
    std::map<int, std::size_t> histogram;
    for (const auto &s : file.samples) {
        for (std::size_t i = 0; i < modes; ++i) {
            sum[i] += s.counts[i];
            sum_sq[i] += static_cast<double>(s.counts[i]) * s.counts[i];
        }
        ++histogram[s.total()];
    }
    std::vector<double> mean(modes), stderr_mean(modes);
    for (std::size_t i = 0; i < modes; ++i) {
        mean[i] = sum[i] / n;
        const double var = n > 1 ? std::max(0.0, (sum_sq[i] - n * mean[i] * mean[i]) / (n - 1)) : 0.0;
        stderr_mean[i] = std::sqrt(var / n);
    }
    json hist = json::object();
    for (const auto &[total, count] : histogram) {
        hist[std::to_string(total)] = count;
    }
    report["modes"] = modes;
    report["mean_photons"] = mean;
    report["mean_stderr"] = stderr_mean;
    report["total_histogram"] = hist;
    if (!cfg.reference_path.empty()) {
        Distribution reference;
        if (cfg.reference_path.extension() == ".json") {
            std::ifstream in(cfg.reference_path);
            if (!in) throw InputError("stats: cannot open " + cfg.reference_path.string());
            json j;
            try {
                j = json::parse(in);
            } catch (const json::parse_error &e) {
                throw InputError("stats: " + cfg.reference_path.string() + ": " + e.what());
            }
            reference = distribution_from_json(j);
        } else {
            const SampleFile ref = read_samples(cfg.reference_path, format_for_path(cfg.reference_path));
            if (!ref.samples.empty() && ref.samples.front().modes() != modes) {
                throw InputError("stats: reference has a different mode count");
            }
            reference = Distribution::empirical(ref.samples);
        }
        report["reference"] = cfg.reference_path.string();
        report["tvd"] = total_variation(Distribution::empirical(file.samples), reference);
    }
    return report;
}

}  // namespace lossybs::cli
