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

#include "lossybs/thermal/thermal_sampler.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "lossybs/errors.h"

namespace lossybs {

ThermalParams::ThermalParams(double l) : lambda(l) {
    if (!(l >= 0.0 && l < 1.0)) {
        throw InputError("thermal lambda must lie in [0, 1)");
    }
}

double thermal_erasure_distance(double lambda, double mu) {
    return 0.5 * (lambda * lambda + std::abs(mu - lambda) + std::abs(lambda * (1.0 - lambda) - mu));
}

CoherentVector sample_thermal_coherent(const Constellation &c, const ThermalParams &t,
                                       std::span<const int> input_modes, int modes, RandomStream &rng) {
    CoherentVector alpha = CoherentVector::Zero(modes);
    const double scale = std::sqrt(t.variance() / 2.0);
    for (int mode : input_modes) {
        if (mode < 0 || mode >= modes) {
            throw InputError("sample_thermal_coherent: input mode out of range");
        }
        const double x = c.draw(rng);
        const double y = c.draw(rng);
        alpha[mode] = scale * Complex(x, y);
    }
    return alpha;
}

CoherentVector sample_thermal_coherent(const Constellation &c, const ThermalParams &t, int n, int modes,
                                       RandomStream &rng) {
    if (n < 0 || n > modes) {
        throw InputError("sample_thermal_coherent: need 0 <= n <= modes");
    }
    std::vector<int> inputs(n);
    std::iota(inputs.begin(), inputs.end(), 0);
    return sample_thermal_coherent(c, t, inputs, modes, rng);
}

CoherentVector propagate(const ComplexMatrix &a, const CoherentVector &alpha) {
    if (a.cols() != alpha.size()) {
        throw InputError("propagate: matrix has " + std::to_string(a.cols()) + " columns, vector has " +
                         std::to_string(alpha.size()) + " entries");
    }
    return a * alpha;
}

int64_t bernoulli_trials_count(int modes, int n, double eps, int constellation) {
    if (modes < 1 || n < 1 || !(eps > 0.0) || constellation < 1) {
        throw InputError("bernoulli_trials_count: all arguments must be positive");
    }
    const double m = constellation;
    const double nn = n;
    return static_cast<int64_t>(std::ceil(6.0 * modes * nn * nn * m * m / eps));
}

namespace {

double success_probability(Complex beta, int64_t t) {
    const double x = std::norm(beta);
    if (t < 1 || static_cast<double>(t) < x) {
        throw InputError("sample_poisson_bernoulli: need t >= |beta|^2 (got t = " + std::to_string(t) +
                         ", |beta|^2 = " + std::to_string(x) + ")");
    }
    return x / static_cast<double>(t);
}

}  // namespace

int64_t sample_poisson_bernoulli(Complex beta, int64_t t, RandomStream &rng) {
    const double p = success_probability(beta, t);
    if (p == 0.0) {
        return 0;
    }
    return std::binomial_distribution<int64_t>(t, p)(rng.engine());
}

int64_t sample_poisson_bernoulli_serial(Complex beta, int64_t t, RandomStream &rng) {
    const double p = success_probability(beta, t);
    int64_t count = 0;
    for (int64_t i = 0; i < t; ++i) {
        count += rng.uniform() < p;
    }
    return count;
}

int64_t sample_poisson_direct(double x, RandomStream &rng) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw InputError("sample_poisson_direct: mean must be finite and non-negative");
    }
    if (x > 500.0) {
        // e^{-x} underflows the inversion recursion.
        return std::poisson_distribution<int64_t>(x)(rng.engine());
    }
    const double u = rng.uniform();
    double p = std::exp(-x);
    double cdf = p;
    int64_t n = 0;
    while (u > cdf && p > 0.0) {
        ++n;
        p *= x / static_cast<double>(n);
        cdf += p;
    }
    return n;
}

ThermalSampler::ThermalSampler(ComplexMatrix a, ThermalParams params, std::vector<int> input_modes, double eps)
    : a_(std::move(a)), params_(params), input_modes_(std::move(input_modes)), eps_(eps) {
    if (a_.rows() != a_.cols()) {
        throw InputError("ThermalSampler: transfer matrix must be square");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw InputError("ThermalSampler: eps must lie in (0, 1)");
    }
    const int modes = static_cast<int>(a_.rows());
    for (int mode : input_modes_) {
        if (mode < 0 || mode >= modes) {
            throw InputError("ThermalSampler: input mode out of range");
        }
    }
    const int n = std::max<int>(1, static_cast<int>(input_modes_.size()));
    const int m = params_.lambda == 0.0 ? 1 : lossybs::constellation_size(n, eps, params_.lambda);
    // The size formula already carries the 9 kappa^2 factor, i.e. a stage error of eps / 3.
    constellation_ = gauss_hermite_constellation(m);
    // t = 6 M N^2 m^2 / eps' bounds the Poisson stage by 2 eps' / 3; eps' = eps / 2 gives eps / 3.
    trials_ = bernoulli_trials_count(modes, n, eps / 2.0, m);
}

ThermalSampler::ThermalSampler(ComplexMatrix a, ThermalParams params, int n, double eps)
    : ThermalSampler(std::move(a), params,
                     [n] {
                         if (n < 0) {
                             throw InputError("ThermalSampler: negative photon count");
                         }
                         std::vector<int> modes(n);
                         std::iota(modes.begin(), modes.end(), 0);
                         return modes;
                     }(),
                     eps) {
}

FockSample ThermalSampler::sample(RandomStream &rng) const {
    const int modes = static_cast<int>(a_.rows());
    const CoherentVector alpha = sample_thermal_coherent(constellation_, params_, input_modes_, modes, rng);
    const CoherentVector beta = propagate(a_, alpha);
    FockSample out;
    out.counts.resize(modes);
    for (int i = 0; i < modes; ++i) {
        const double x = std::norm(beta[i]);
        // Keep M x^2 / t <= eps / 3 even for rare large amplitudes.
        const double needed = std::max(std::ceil(3.0 * modes * x * x / eps_), std::ceil(x));
        const int64_t t = std::max<int64_t>(trials_, static_cast<int64_t>(needed));
        out.counts[i] = static_cast<int>(sample_poisson_bernoulli(beta[i], t, rng));
    }
    return out;
}

std::vector<FockSample> ThermalSampler::sample_batch_serial(std::size_t count, const RandomStream &rng_root) const {
    std::vector<FockSample> out(count);
    RandomStream rng = rng_root.split(0);
    for (auto &s : out) {
        s = sample(rng);
    }
    return out;
}

std::vector<FockSample> ThermalSampler::sample_batch(std::size_t count, const RandomStream &rng_root,
                                                     int workers) const {
    workers = std::max(1, workers);
    std::vector<FockSample> out(count);
    const std::size_t block = (count + workers - 1) / workers;
#pragma omp parallel for num_threads(workers) schedule(static, 1)
    for (int w = 0; w < workers; ++w) {
        RandomStream rng = rng_root.split(static_cast<uint64_t>(w));
        const std::size_t begin = std::min(count, w * block);
        const std::size_t end = std::min(count, begin + block);
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = sample(rng);
        }
    }
    return out;
}

FockSample sample_output(const ComplexMatrix &a, const ThermalParams &t, int n, double eps, RandomStream &rng) {
    return ThermalSampler(a, t, n, eps).sample(rng);
}

std::vector<int> scattershot_herald(int modes, double lambda, RandomStream &rng) {
    ThermalParams check(lambda);
    if (modes < 0) {
        throw InputError("scattershot_herald: negative mode count");
    }
    std::vector<int> counts(modes, 0);
    if (lambda == 0.0) {
        return counts;
    }
    std::geometric_distribution<int> geometric(1.0 - lambda);
    for (int &c : counts) {
        c = geometric(rng.engine());
    }
    return counts;
}

std::vector<int> herald_input_modes(int modes, double lambda, RandomStream &rng, int max_tries) {
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        const std::vector<int> counts = scattershot_herald(modes, lambda, rng);
        if (std::all_of(counts.begin(), counts.end(), [](int c) { return c <= 1; })) {
            std::vector<int> fired;
            for (int i = 0; i < modes; ++i) {
                if (counts[i] == 1) {
                    fired.push_back(i);
                }
            }
            return fired;
        }
    }
    throw CapacityError("herald_input_modes: no collision-free herald pattern in " + std::to_string(max_tries) +
                        " tries");
}

}  // namespace lossybs
