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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <gtest/gtest.h>

#include "lossybs/cli/validation.h"
#include "lossybs/errors.h"
#include "lossybs/thermal/constellation.h"
#include "lossybs/thermal/thermal_sampler.h"

using namespace lossybs;

namespace {

// Pearson statistic of integer draws against a pmf, bins with expectation < 5 merged into the tail.
double chi_square(const std::map<int64_t, int> &counts, int n, const std::function<double(int64_t)> &pmf,
                  int64_t max_bin, int &dof) {
    double stat = 0.0, tail_p = 1.0;
    int tail_count = n;
    dof = 0;
    for (int64_t k = 0; k <= max_bin; ++k) {
        const double e = n * pmf(k);
        if (e < 5.0) break;
        const auto it = counts.find(k);
        const int o = it == counts.end() ? 0 : it->second;
        stat += (o - e) * (o - e) / e;
        tail_p -= pmf(k);
        tail_count -= o;
        ++dof;
    }
    const double e = n * tail_p;
    if (e > 0) stat += (tail_count - e) * (tail_count - e) / e;
    return stat;
}

}  // namespace

TEST(Constellation, QuadratureExactness) {
    for (int m = 1; m <= 10; ++m) {
        const Constellation c = gauss_hermite_constellation(m);
        ASSERT_EQ(c.size(), m);
        EXPECT_NEAR(static_cast<double>(hermite_moment(c, 0)), 1.0, 1e-15);
        for (int k = 1; k <= 2 * m - 1; ++k) EXPECT_LT(std::fabs(hermite_moment(c, k)), 1e-10L) << m << " " << k;
    }
}

TEST(Constellation, FirstInexactMomentIsNonzero) {
    // sum w He_{2m} = -m! ... nonzero, so the rule is exactly degree 2m - 1.
    for (int m = 1; m <= 6; ++m) {
        EXPECT_GT(std::fabs(hermite_moment(gauss_hermite_constellation(m), 2 * m)), 0.1L) << m;
    }
}

TEST(Constellation, ClosedForms) {
    const Constellation c1 = gauss_hermite_constellation(1);
    EXPECT_EQ(c1.points[0], 0.0L);
    EXPECT_EQ(c1.weights[0], 1.0L);
    Constellation c2 = gauss_hermite_constellation(2);
    std::vector<long double> p2(c2.points.begin(), c2.points.end());
    std::sort(p2.begin(), p2.end());
    EXPECT_NEAR(static_cast<double>(p2[0]), -1.0, 1e-12);
    EXPECT_NEAR(static_cast<double>(p2[1]), 1.0, 1e-12);
    for (auto w : c2.weights) EXPECT_NEAR(static_cast<double>(w), 0.5, 1e-12);
    const Constellation c3 = gauss_hermite_constellation(3);
    for (int j = 0; j < 3; ++j) {
        const double x = static_cast<double>(c3.points[j]);
        const double w = static_cast<double>(c3.weights[j]);
        if (std::abs(x) < 1e-6) {
            EXPECT_NEAR(w, 2.0 / 3.0, 1e-12);
        } else {
            EXPECT_NEAR(std::abs(x), std::sqrt(3.0), 1e-12);
            EXPECT_NEAR(w, 1.0 / 6.0, 1e-12);
        }
    }
}

TEST(Constellation, DrawFollowsWeights) {
    const Constellation c = gauss_hermite_constellation(3);
    RandomStream rng(3);
    const int n = 60000;
    int center = 0;
    for (int i = 0; i < n; ++i) center += std::abs(c.draw(rng)) < 1e-6;
    const double p = 2.0 / 3.0;
    EXPECT_NEAR(center / double(n), p, 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST(Constellation, SizeFormula) {
    const double two_log_3k = 2.0 * std::log(3.0 * std::sqrt(1.18));
    const double want = std::ceil((std::log(10.0) + std::log(1 / 0.01) - std::log(1 - 0.3) + two_log_3k) /
                                  std::log(1 / 0.3));
    EXPECT_EQ(constellation_size(10, 0.01, 0.3), static_cast<int>(want));
    EXPECT_GE(constellation_size(1, 0.9, 1e-9), 1);
    EXPECT_THROW(constellation_size(10, 0.01, 1.0), InputError);
    EXPECT_THROW(constellation_size(10, 0.01, 0.0), InputError);
    EXPECT_THROW(gauss_hermite_constellation(0), InputError);
}

TEST(Thermal, ErasureDistance) {
    EXPECT_DOUBLE_EQ(thermal_erasure_distance(0.0, 0.0), 0.0);
    for (double mu : {0.01, 0.1, 0.3}) EXPECT_NEAR(thermal_erasure_distance(mu, mu), mu * mu, 1e-15);
    EXPECT_THROW(ThermalParams(1.0), InputError);
    EXPECT_THROW(ThermalParams(-0.1), InputError);
}

TEST(Thermal, CoherentAmplitudeVariance) {
    // E|alpha|^2 = V for each input mode.
    const ThermalParams t(0.3);
    const Constellation c = gauss_hermite_constellation(8);
    RandomStream rng(4);
    const int n = 40000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const CoherentVector a = sample_thermal_coherent(c, t, 1, 3, rng);
        EXPECT_EQ(a[1], Complex(0.0));
        sum += std::norm(a[0]);
    }
    // |alpha|^2 = V/2 (x^2 + x'^2) has variance V^2 / 2 for normal x.
    EXPECT_NEAR(sum / n, t.variance(), 4.0 * t.variance() / std::sqrt(2.0 * n));
}

TEST(Thermal, PropagateChecksDimensions) {
    EXPECT_THROW(propagate(ComplexMatrix::Identity(2, 2), CoherentVector::Zero(3)), InputError);
}

TEST(Thermal, TrialCount) {
    EXPECT_EQ(bernoulli_trials_count(4, 2, 0.01, 5), 240000);
    EXPECT_THROW(bernoulli_trials_count(4, 2, 0.0, 5), InputError);
}

TEST(Thermal, BernoulliSumMatchesSerialLaw) {
    // Both draw Binomial(t, x/t); compare each against the exact pmf.
    const int64_t t = 40;
    const double x = 1.5;
    const int n = 30000;
    auto binom = [&](int64_t k) {
        const double p = x / t;
        return std::exp(std::lgamma(t + 1.0) - std::lgamma(k + 1.0) - std::lgamma(t - k + 1.0) + k * std::log(p) +
                        (t - k) * std::log1p(-p));
    };
    RandomStream a(5), b(6);
    std::map<int64_t, int> fast, serial;
    for (int i = 0; i < n; ++i) {
        ++fast[sample_poisson_bernoulli(std::sqrt(x), t, a)];
        ++serial[sample_poisson_bernoulli_serial(std::sqrt(x), t, b)];
    }
    int dof = 0;
    // 99.9% quantile of chi^2 with <= 10 dof is 29.6.
    EXPECT_LT(chi_square(fast, n, binom, t, dof), 29.6);
    EXPECT_LT(chi_square(serial, n, binom, t, dof), 29.6);
    EXPECT_THROW(sample_poisson_bernoulli(Complex(3.0, 0.0), 4, a), InputError);
}

TEST(Thermal, PoissonDirect) {
    RandomStream rng(7);
    const double x = 2.0;
    const int n = 30000;
    std::map<int64_t, int> counts;
    for (int i = 0; i < n; ++i) ++counts[sample_poisson_direct(x, rng)];
    int dof = 0;
    auto pois = [&](int64_t k) { return std::exp(-x + k * std::log(x) - std::lgamma(k + 1.0)); };
    EXPECT_LT(chi_square(counts, n, pois, 100, dof), 29.6);
}

TEST(Thermal, BinomialPoissonBound) {
    for (double x : {0.5, 1.0, 2.0}) {
        for (int t : {10, 100, 1000}) {
            const double tvd = cli::binomial_poisson_tvd(x, t);
            EXPECT_LE(tvd, (1.0 - std::exp(-x)) * x / t) << x << " " << t;
            EXPECT_GT(tvd, 0.0);
        }
    }
}

TEST(ThermalSampler, ZeroLambdaGivesVacuum) {
    RandomStream rng(8);
    const ThermalSampler s(haar_unitary(3, rng), ThermalParams(0.0), 2, 0.05);
    EXPECT_EQ(s.constellation_size(), 1);
    for (const auto &x : s.sample_batch_serial(200, rng)) EXPECT_EQ(x.total(), 0);
}

TEST(ThermalSampler, SingleModeMeanAndGeometricLaw) {
    const double lambda = 0.2;
    const ThermalSampler s(ComplexMatrix::Identity(1, 1), ThermalParams(lambda), 1, 0.01);
    const auto samples = s.sample_batch_serial(50000, RandomStream(9));
    double sum = 0.0;
    std::map<int64_t, int> counts;
    for (const auto &x : samples) {
        sum += x.counts[0];
        ++counts[x.counts[0]];
    }
    const double mean = lambda / (1 - lambda);
    const double var = lambda / ((1 - lambda) * (1 - lambda));
    EXPECT_NEAR(sum / samples.size(), mean, 4.0 * std::sqrt(var / samples.size()));
    int dof = 0;
    auto geo = [&](int64_t k) { return (1 - lambda) * std::pow(lambda, static_cast<double>(k)); };
    EXPECT_LT(chi_square(counts, static_cast<int>(samples.size()), geo, 50, dof), 29.6);
}

TEST(ThermalSampler, BatchSplitsAreReproducible) {
    RandomStream rng(10);
    const ThermalSampler s(haar_unitary(4, rng), ThermalParams(0.3), 2, 0.05);
    const RandomStream root(11);
    EXPECT_EQ(s.sample_batch(1000, root, 1), s.sample_batch_serial(1000, root));
    EXPECT_EQ(s.sample_batch(1000, root, 3), s.sample_batch(1000, root, 3));
}

TEST(ThermalSampler, InputModeErrors) {
    EXPECT_THROW(ThermalSampler(ComplexMatrix::Identity(2, 2), ThermalParams(0.1), std::vector<int>{2}, 0.05),
                 InputError);
    EXPECT_THROW(ThermalSampler(ComplexMatrix::Identity(2, 2), ThermalParams(0.1), 1, 0.0), InputError);
}

TEST(Scattershot, HeraldLaw) {
    RandomStream rng(12);
    const double lambda = 0.3;
    const int n = 20000;
    double zeros = 0;
    for (int i = 0; i < n; ++i) zeros += scattershot_herald(1, lambda, rng)[0] == 0;
    EXPECT_NEAR(zeros / n, 1 - lambda, 4.0 * std::sqrt(lambda * (1 - lambda) / n));
    for (int i = 0; i < 100; ++i) {
        for (int m : herald_input_modes(6, lambda, rng)) {
            EXPECT_GE(m, 0);
            EXPECT_LT(m, 6);
        }
    }
}
