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

#include "lossybs/cli/validation.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

#include "lossybs/circuit/circuit_json.h"
#include "lossybs/circuit/loss.h"
#include "lossybs/circuit/thresholds.h"
#include "lossybs/cli/commands.h"
#include "lossybs/errors.h"
#include "lossybs/mps/simulate.h"
#include "lossybs/oracle/oracle.h"
#include "lossybs/thermal/thermal_sampler.h"

namespace lossybs::cli {
namespace {

CheckResult make(std::string name, bool pass, double value, double tolerance, std::string detail = {}) {
    return CheckResult{std::move(name), pass ? CheckStatus::Pass : CheckStatus::Fail, value, tolerance,
                       std::move(detail)};
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// Upper bound on the expected empirical TVD with n draws over K outcomes, times three.
double sampling_slack(std::size_t support, std::size_t n) {
    return 3.0 * std::sqrt(static_cast<double>(support) / (4.0 * static_cast<double>(n)));
}

std::vector<int> random_pattern(int modes, int photons, RandomStream &rng) {
    std::vector<int> slots(modes);
    for (int i = 0; i < modes; ++i) slots[i] = i;
    std::shuffle(slots.begin(), slots.end(), rng.engine());
    std::vector<int> pattern(modes, 0);
    for (int i = 0; i < photons; ++i) pattern[slots[i]] = 1;
    return pattern;
}

}  // namespace

const char *status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

CheckResult check_thermalization_depth() {
    const double d = thermalization_depth(100, 1e-6, 1e-3);
    return make("thermalization_depth", std::abs(d - 9205.7) <= 0.1, d, 0.1, "N=100 eps=1e-6 x=1e-3, expect 9205.7");
}

CheckResult check_erasure_distance_grid() {
    double worst = 0.0;
    int mismatches = 0;
    const int ns[] = {1, 2, 3, 7, 10, 50, 100, 1000};
    for (int i = 1; i <= 30; ++i) {
        const double mu = 0.01 * i;
        worst = std::max(worst, std::abs(thermal_erasure_distance(mu, mu) - mu * mu));
        for (int n : ns) {
            const double edge = n * mu * mu;
            const double eps_grid[] = {edge, std::nextafter(edge, 0.0), std::nextafter(edge, 1.0), 1e-4, 1e-3,
                                       1e-2, 0.05,  0.1,  0.5};
            for (double eps : eps_grid) {
                if (simulability_condition(mu, n, eps) != (n * mu * mu <= eps)) ++mismatches;
            }
        }
    }
    return make("erasure_distance_grid", worst <= 1e-14 && mismatches == 0, worst, 1e-14,
                std::to_string(mismatches) + " simulability mismatches");
}

CheckResult check_mps_oracle(const ValidationOptions &opts) {
    RandomStream rng = RandomStream(opts.seed).split(3);
    double worst_tvd = 0.0, worst_abs = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + static_cast<int>(rng.uniform() * 5);
        const int depth = 1 + static_cast<int>(rng.uniform() * 4);
        const int n = 1 + static_cast<int>(rng.uniform() * std::min(3, m));
        const LayeredCircuit c = random_brickwork(m, depth, 1.0, rng);
        const std::vector<int> pattern = random_pattern(m, n, rng);
        const SimulationResult r = simulate_circuit(c, pattern);
        const Distribution ref = fock_output_distribution(transfer_matrix(c), pattern);
        Distribution mps;
        for (const auto &[o, p] : ref) {
            const double q = outcome_probability(r.state, o);
            mps.add(o, q);
            worst_abs = std::max(worst_abs, std::abs(q - p));
        }
        worst_tvd = std::max(worst_tvd, total_variation(mps, ref));
    }
    return make("mps_oracle_equivalence", worst_tvd < 1e-10, worst_tvd, 1e-10,
                "50 circuits N<=3 M<=6 D<=4; max per-outcome |diff| " + fmt(worst_abs));
}

CheckResult check_hong_ou_mandel(const ValidationOptions &opts) {
    LayeredCircuit c{2, {Layer{{}, {CouplerGate{0, std::acos(-1.0) / 4.0, 0.0, 1.0}}, 1.0}}};
    const std::vector<int> pattern{1, 1};
    const FockSample coincidence{{1, 1}};
    const double p_oracle = fock_output_distribution(transfer_matrix(c), pattern).weight(coincidence);
    const SimulationResult r = simulate_circuit(c, pattern);
    const double p_mps = outcome_probability(r.state, coincidence);
    const MpsSampler sampler(c, {0, 1}, 1.0);
    const auto samples = sampler.sample_batch(opts.samples, RandomStream(opts.seed).split(4), opts.workers);
    const auto hits = std::count(samples.begin(), samples.end(), coincidence);
    const double worst = std::max(p_oracle, p_mps);
    return make("hong_ou_mandel", worst < 1e-12 && hits == 0, worst, 1e-12,
                "oracle " + fmt(p_oracle) + ", mps " + fmt(p_mps) + ", " + std::to_string(hits) + " of " +
                    std::to_string(samples.size()) + " samples at (1,1)");
}

CheckResult check_thermal_sampler(const ValidationOptions &opts) {
    const int n = opts.oracle_photons;
    const int m = std::max(2, n);
    const double lambda = 0.1, eps = 0.05;
    RandomStream rng = RandomStream(opts.seed).split(5);
    const ComplexMatrix u = haar_unitary(m, rng);
    const TruncatedDistribution ref = thermal_exact_distribution(u, lambda, n, 8);
    const ThermalSampler sampler(u, ThermalParams(lambda), n, eps);
    const auto samples = sampler.sample_batch(opts.samples, rng.split(1), opts.workers);
    const double tvd = total_variation(Distribution::empirical(samples), ref.dist);
    const double tol = eps + sampling_slack(ref.dist.size(), samples.size());
    return make("thermal_sampler_end_to_end", tvd <= tol, tvd, tol,
                "M=" + std::to_string(m) + " N=" + std::to_string(n) + " lambda=0.1 eps=0.05 cutoff=8, K=" +
                    std::to_string(ref.dist.size()) + ", constellation " +
                    std::to_string(sampler.constellation_size()));
}

CheckResult check_lossy_input(const ValidationOptions &opts) {
    const int n = opts.oracle_photons;
    const int m = n + 1;
    const double mu = 0.5;
    RandomStream rng = RandomStream(opts.seed).split(6);
    const LayeredCircuit c = random_brickwork(m, 3, 1.0, rng);
    const Distribution ref = lossy_exact_distribution(transfer_matrix(c), mu, n);
    std::vector<int> inputs(n);
    for (int i = 0; i < n; ++i) inputs[i] = i;
    const MpsSampler sampler(c, inputs, mu);
    const auto samples = sampler.sample_batch(opts.samples, rng.split(1), opts.workers);
    const double tvd = total_variation(Distribution::empirical(samples), ref);
    const double tol = sampling_slack(ref.size(), samples.size());
    return make("lossy_input_equivalence", tvd < tol, tvd, tol,
                "mu=0.5 N=" + std::to_string(n) + " M=" + std::to_string(m) + ", K=" + std::to_string(ref.size()));
}

CheckResult check_quadrature() {
    long double worst = 0.0L;
    for (int m = 1; m <= 10; ++m) {
        const Constellation c = gauss_hermite_constellation(m);
        for (int k = 1; k <= 2 * m - 1; ++k) {
            worst = std::max(worst, std::abs(hermite_moment(c, k)));
        }
    }
    auto sorted_pairs = [](const Constellation &c) {
        std::vector<std::pair<long double, long double>> v;
        for (int j = 0; j < c.size(); ++j) v.emplace_back(c.points[j], c.weights[j]);
        std::sort(v.begin(), v.end());
        return v;
    };
    const long double r3 = std::sqrt(3.0L);
    const std::vector<std::pair<long double, long double>> want2{{-1.0L, 0.5L}, {1.0L, 0.5L}};
    const std::vector<std::pair<long double, long double>> want3{
        {-r3, 1.0L / 6.0L}, {0.0L, 2.0L / 3.0L}, {r3, 1.0L / 6.0L}};
    long double closed = 0.0L;
    const auto got2 = sorted_pairs(gauss_hermite_constellation(2));
    const auto got3 = sorted_pairs(gauss_hermite_constellation(3));
    for (std::size_t j = 0; j < 2; ++j) {
        closed = std::max({closed, std::abs(got2[j].first - want2[j].first), std::abs(got2[j].second - want2[j].second)});
    }
    for (std::size_t j = 0; j < 3; ++j) {
        closed = std::max({closed, std::abs(got3[j].first - want3[j].first), std::abs(got3[j].second - want3[j].second)});
    }
    return make("quadrature_exactness", worst < 1e-10L && closed < 1e-12L, static_cast<double>(worst), 1e-10,
                "closed-form m=2,3 deviation " + fmt(static_cast<double>(closed)));
}

double binomial_poisson_tvd(double x, int t) {
    const double p = x / t;
    double diff = 0.0, poisson_mass = 0.0;
    for (int k = 0; k <= t; ++k) {
        const double log_b = std::lgamma(t + 1.0) - std::lgamma(k + 1.0) - std::lgamma(t - k + 1.0) +
                             k * std::log(p) + (t - k) * std::log1p(-p);
        const double log_p = -x + k * std::log(x) - std::lgamma(k + 1.0);
        const double pk = std::exp(log_p);
        diff += std::abs(std::exp(log_b) - pk);
        poisson_mass += pk;
    }
    return 0.5 * (diff + std::max(0.0, 1.0 - poisson_mass));
}

CheckResult check_poisson_bound() {
    double worst_ratio = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
        for (int t : {10, 100, 1000}) {
            const double bound = (1.0 - std::exp(-x)) * x / t;
            worst_ratio = std::max(worst_ratio, binomial_poisson_tvd(x, t) / bound);
        }
    }
    return make("binomial_poisson_bound", worst_ratio <= 1.0, worst_ratio, 1.0, "max TVD / ((1-e^-x) x / t)");
}

CheckResult check_chi2_budget(const ValidationOptions &opts) {
    double worst_ratio = 0.0;
    for (int m = 2; m <= 8; ++m) {
        for (double lambda : {0.1, 0.3, 0.5}) {
            const double bound = opts.two_kappa_squared * std::pow(lambda, m) / (1.0 - lambda);
            worst_ratio = std::max(worst_ratio, chi2_constellation(m, lambda, 200) / bound);
        }
    }
    return make("chi2_budget", worst_ratio <= 1.0, worst_ratio, 1.0,
                "max chi2 / (" + fmt(opts.two_kappa_squared) + " lambda^m / (1 - lambda))");
}

CheckResult check_bond_growth(const ValidationOptions &opts) {
    RandomStream rng = RandomStream(opts.seed).split(10);
    const int d = 2;
    double worst_ratio = 0.0;
    int worst_rank = 0;
    bool local_ok = true;
    for (int depth = 1; depth <= 5; ++depth) {
        for (int trial = 0; trial < 4; ++trial) {
            const int m = 4 + trial;
            const LayeredCircuit c = random_brickwork(m, depth, 1.0, rng);
            SimulationOptions so;
            so.cutoff = d;
            const SimulationResult r = simulate_circuit(c, random_pattern(m, 2, rng), so);
            worst_ratio = std::max(worst_ratio, r.peak_bond / std::pow(d + 1.0, 2.0 * depth));
            worst_rank = std::max(worst_rank, r.max_mpo_rank);
            local_ok = local_ok && r.growth_bound_ok && r.depth_bound_ok;
        }
    }
    const bool pass = worst_ratio <= 1.0 && worst_rank <= (d + 1) * (d + 1) && local_ok;
    return make("bond_growth_bound", pass, worst_ratio, 1.0,
                "peak bond / (d+1)^(2D); max coupler rank " + std::to_string(worst_rank) + " <= 9");
}

CheckResult check_loss_model(const ValidationOptions &opts) {
    RandomStream rng = RandomStream(opts.seed).split(11);
    double worst_mu = 0.0;
    for (int depth = 1; depth <= 5; ++depth) {
        const LayeredCircuit c = random_brickwork(6, depth, 0.9, rng);
        const LossDecomposition d = decompose_losses(transfer_matrix(c));
        for (double mu : d.mu) {
            worst_mu = std::max(worst_mu, std::abs(mu - std::pow(0.9, depth)));
        }
    }
    LayeredCircuit c = random_brickwork(6, 4, 1.0, rng);
    for (auto &layer : c.layers) {
        layer.idle_tau = 0.5 + 0.5 * rng.uniform();
        for (auto &g : layer.couplers) g.tau = 0.5 + 0.5 * rng.uniform();
    }
    const ComplexMatrix a = transfer_matrix(c);
    const NonuniformFactor f = factor_nonuniform(decompose_losses(a));
    const double recombine = max_abs(std::sqrt(f.mu_max) * f.residual.recombine() - a);
    return make("loss_model", worst_mu <= 1e-10 && recombine <= 1e-12, worst_mu, 1e-10,
                "non-uniform recombination error " + fmt(recombine));
}

CheckResult check_algebraic_threshold() {
    PlanParameters p;
    p.modes = 10000;
    p.k = 1.0;
    p.gamma = 0.5;
    p.epsilon = 0.02;
    const AlgebraicThreshold a = depth_threshold_algebraic(p, AlgebraicLossParams{1.0, 2.0});
    return make("algebraic_threshold", std::abs(a.d_star - 9.0) <= 1e-9 && a.asymptotically_simulable, a.d_star,
                1e-9, "gamma/beta = " + fmt(a.gamma_over_beta));
}

CheckResult check_determinism(const ValidationOptions &opts) {
    namespace fs = std::filesystem;
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    const fs::path dir = fs::temp_directory_path() /
                         ("lossybs-determinism-" + std::to_string(opts.seed) + "-" + std::to_string(stamp));
    fs::create_directories(dir);
    RandomStream rng = RandomStream(opts.seed).split(13);
    save_circuit(random_brickwork(4, 3, 0.9, rng), dir / "circuit.json");
    bool identical = true;
    std::string detail;
    try {
        for (SampleMode mode : {SampleMode::Thermal, SampleMode::Mps}) {
            std::string bytes[2];
            for (int run = 0; run < 2; ++run) {
                RunConfig cfg;
                cfg.command = Command::Sample;
                cfg.circuit_path = dir / "circuit.json";
                cfg.params.photons = 2;
                cfg.params.epsilon = 0.05;
                cfg.photons_given = true;
                cfg.samples = 2000;
                cfg.seed = opts.seed;
                cfg.mode = mode;
                cfg.workers = 1;
                cfg.output_path = dir / ("run" + std::to_string(run) + ".jsonl");
                std::ostringstream unused;
                run_sample(cfg, unused);
                std::ifstream in(cfg.output_path, std::ios::binary);
                bytes[run].assign(std::istreambuf_iterator<char>(in), {});
            }
            const bool same = bytes[0] == bytes[1] && !bytes[0].empty();
            identical = identical && same;
            detail += std::string(mode_name(mode)) + (same ? " identical; " : " differs; ");
        }
    } catch (...) {
        fs::remove_all(dir);
        throw;
    }
    fs::remove_all(dir);
    return make("determinism", identical, identical ? 0.0 : 1.0, 0.0, detail);
}

std::vector<CheckResult> run_validation_suite(const ValidationOptions &opts) {
    const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks = {
        {"thermalization_depth", [] { return check_thermalization_depth(); }},
        {"erasure_distance_grid", [] { return check_erasure_distance_grid(); }},
        {"mps_oracle_equivalence", [&] { return check_mps_oracle(opts); }},
        {"hong_ou_mandel", [&] { return check_hong_ou_mandel(opts); }},
        {"thermal_sampler_end_to_end", [&] { return check_thermal_sampler(opts); }},
        {"lossy_input_equivalence", [&] { return check_lossy_input(opts); }},
        {"quadrature_exactness", [] { return check_quadrature(); }},
        {"binomial_poisson_bound", [] { return check_poisson_bound(); }},
        {"chi2_budget", [&] { return check_chi2_budget(opts); }},
        {"bond_growth_bound", [&] { return check_bond_growth(opts); }},
        {"loss_model", [&] { return check_loss_model(opts); }},
        {"algebraic_threshold", [] { return check_algebraic_threshold(); }},
        {"determinism", [&] { return check_determinism(opts); }},
    };
    std::vector<CheckResult> results;
    for (const auto &[name, run] : checks) {
        try {
            results.push_back(run());
        } catch (const CapacityError &e) {
            results.push_back(CheckResult{name, CheckStatus::Skipped, 0.0, 0.0, e.what()});
        } catch (const std::exception &e) {
            results.push_back(CheckResult{name, CheckStatus::Fail, 0.0, 0.0, std::string("error: ") + e.what()});
        }
    }
    return results;
}

nlohmann::json report_to_json(const std::vector<CheckResult> &results) {
    nlohmann::json checks = nlohmann::json::array();
    int counts[3] = {0, 0, 0};
    for (const auto &r : results) {
        ++counts[static_cast<int>(r.status)];
        checks.push_back({{"name", r.name},
                          {"status", status_name(r.status)},
                          {"value", r.value},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    }
    return {{"checks", checks}, {"passed", counts[0]}, {"failed", counts[1]}, {"skipped", counts[2]}};
}

}  // namespace lossybs::cli
