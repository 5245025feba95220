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
#include <span>
#include <vector>

#include "lossybs/numerics/distribution.h"
#include "lossybs/numerics/linalg.h"
#include "lossybs/thermal/constellation.h"

namespace lossybs {

/// Bose-Einstein state (1 - lambda) sum lambda^n |n><n|.
struct ThermalParams {
    double lambda = 0.0;

    /// Throws InputError unless 0 <= lambda < 1.
    explicit ThermalParams(double lambda);
    /// Mean photon number lambda / (1 - lambda); also the P-function variance.
    double mean_photons() const {
        return lambda / (1.0 - lambda);
    }
    double variance() const {
        return mean_photons();
    }
};

using CoherentVector = ComplexVector;

/// Trace distance between a thermal state (lambda) and the erasure output
/// (1 - mu)|0><0| + mu|1><1|: (lambda^2 + |mu - lambda| + |lambda(1 - lambda) - mu|) / 2.
double thermal_erasure_distance(double lambda, double mu);

/// alpha_i = sqrt(V/2)(x + i x') for each listed input mode, x and x' independent
/// constellation draws; every other of the `modes` entries is vacuum.
CoherentVector sample_thermal_coherent(const Constellation &c, const ThermalParams &t,
                                       std::span<const int> input_modes, int modes, RandomStream &rng);
/// Inputs on modes 0..n-1.
CoherentVector sample_thermal_coherent(const Constellation &c, const ThermalParams &t, int n, int modes,
                                       RandomStream &rng);

/// beta = A alpha. Throws InputError on dimension mismatch.
CoherentVector propagate(const ComplexMatrix &a, const CoherentVector &alpha);

/// ceil(6 M N^2 m^2 / eps)
int64_t bernoulli_trials_count(int modes, int n, double eps, int constellation);

/// Sum of t Bernoulli(|beta|^2 / t) trials, drawn as one Binomial(t, |beta|^2 / t) variate.
/// Throws InputError if t < |beta|^2.
int64_t sample_poisson_bernoulli(Complex beta, int64_t t, RandomStream &rng);
/// Same law, literally summing t coin flips. Reference for tests at small t.
int64_t sample_poisson_bernoulli_serial(Complex beta, int64_t t, RandomStream &rng);
/// Poisson(x) by sequential inversion of the CDF.
int64_t sample_poisson_direct(double x, RandomStream &rng);

/// Photon-counting sampler for thermal inputs through a (possibly lossy) matrix.
///
/// The eps budget is split evenly: eps/3 for the constellation, eps/3 for the
/// Bernoulli approximation of the Poisson law; the floating-point product
/// beta = A alpha contributes ~1e-15, far inside the remaining third.
class ThermalSampler {
   public:
    ThermalSampler(ComplexMatrix a, ThermalParams params, std::vector<int> input_modes, double eps);
    ThermalSampler(ComplexMatrix a, ThermalParams params, int n, double eps);

    FockSample sample(RandomStream &rng) const;

    /// count samples; worker w draws a contiguous block from rng_root.split(w).
    std::vector<FockSample> sample_batch(std::size_t count, const RandomStream &rng_root, int workers) const;
    /// Single stream, in order. Equal to sample_batch(count, root, 1).
    std::vector<FockSample> sample_batch_serial(std::size_t count, const RandomStream &rng_root) const;

    int constellation_size() const {
        return constellation_.size();
    }
    int64_t trials() const {
        return trials_;
    }
    const ThermalParams &params() const {
        return params_;
    }

   private:
    ComplexMatrix a_;
    ThermalParams params_;
    std::vector<int> input_modes_;
    double eps_;
    Constellation constellation_;
    int64_t trials_;
};

/// One sample: constellation_size -> constellation -> coherent draw -> propagate -> Bernoulli counts.
FockSample sample_output(const ComplexMatrix &a, const ThermalParams &t, int n, double eps, RandomStream &rng);

/// M independent herald counts, each with P(n) = (1 - lambda) lambda^n.
std::vector<int> scattershot_herald(int modes, double lambda, RandomStream &rng);

/// Redraws heralds until collision-free (every count <= 1); returns the modes that fired.
/// Throws CapacityError after max_tries rejections.
std::vector<int> herald_input_modes(int modes, double lambda, RandomStream &rng, int max_tries = 1000000);

}  // namespace lossybs
