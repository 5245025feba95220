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

#include "lossybs/oracle/oracle.h"

#include <cmath>
#include <numeric>
#include <string>

#include "lossybs/errors.h"
#include "lossybs/numerics/permanent.h"
#include "lossybs/thermal/constellation.h"

namespace lossybs {
namespace {

void fill_compositions(int left, int mode, std::vector<int> &current, std::vector<FockSample> &out) {
    const int modes = static_cast<int>(current.size());
    if (mode == modes - 1) {
        current[mode] = left;
        out.push_back(FockSample{current});
        return;
    }
    for (int k = 0; k <= left; ++k) {
        current[mode] = k;
        fill_compositions(left - k, mode + 1, current, out);
    }
}

double log_factorial_product(std::span<const int> counts) {
    double s = 0.0;
    for (int c : counts) {
        s += std::lgamma(c + 1.0);
    }
    return s;
}

std::vector<int> repeated_indices(std::span<const int> counts) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        idx.insert(idx.end(), counts[i], static_cast<int>(i));
    }
    return idx;
}

std::vector<int> check_input(const ComplexMatrix &u, std::span<const int> input) {
    if (u.rows() != u.cols()) {
        throw InputError("fock_output_distribution: matrix must be square");
    }
    if (static_cast<Eigen::Index>(input.size()) != u.cols()) {
        throw InputError("fock_output_distribution: input length does not match matrix size");
    }
    if (u.rows() > kOracleMaxModes) {
        throw CapacityError("fock_output_distribution: " + std::to_string(u.rows()) + " modes exceeds oracle cap " +
                            std::to_string(kOracleMaxModes));
    }
    int total = 0;
    for (int s : input) {
        if (s < 0) {
            throw InputError("fock_output_distribution: negative input count");
        }
        total += s;
    }
    if (total > kOracleMaxPhotons) {
        throw CapacityError("fock_output_distribution: " + std::to_string(total) + " photons exceeds oracle cap " +
                            std::to_string(kOracleMaxPhotons));
    }
    if (!all_finite(u) || unitarity_error(u) > 1e-10) {
        throw InputError("fock_output_distribution: matrix is not unitary");
    }
    return repeated_indices(input);
}

double outcome_weight(const ComplexMatrix &u, const std::vector<int> &cols, double log_in_fact,
                      const FockSample &out, bool serial) {
    const std::vector<int> rows = repeated_indices(out.counts);
    const int n = static_cast<int>(cols.size());
    ComplexMatrix sub(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            sub(r, c) = u(rows[r], cols[c]);
        }
    }
    const Complex p = serial ? permanent_serial(sub) : permanent(sub);
    return std::norm(p) * std::exp(-log_in_fact - log_factorial_product(out.counts));
}

}  // namespace

std::vector<FockSample> compositions(int total, int modes) {
    if (total < 0 || modes < 1) {
        throw InputError("compositions: need total >= 0 and modes >= 1");
    }
    std::vector<FockSample> out;
    std::vector<int> current(modes, 0);
    fill_compositions(total, 0, current, out);
    return out;
}

Distribution fock_output_distribution(const ComplexMatrix &u, std::span<const int> input) {
    const std::vector<int> cols = check_input(u, input);
    const double log_in = log_factorial_product(input);
    const std::vector<FockSample> outcomes = compositions(static_cast<int>(cols.size()), static_cast<int>(u.rows()));
    std::vector<double> weights(outcomes.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        weights[i] = outcome_weight(u, cols, log_in, outcomes[i], true);
    }
    Distribution d;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        d.add(outcomes[i], weights[i]);
    }
    return d;
}

Distribution fock_output_distribution_serial(const ComplexMatrix &u, std::span<const int> input) {
    const std::vector<int> cols = check_input(u, input);
    const double log_in = log_factorial_product(input);
    Distribution d;
    for (const auto &out : compositions(static_cast<int>(cols.size()), static_cast<int>(u.rows()))) {
        d.add(out, outcome_weight(u, cols, log_in, out, true));
    }
    return d;
}

Distribution lossy_exact_distribution(const ComplexMatrix &u, double mu, int n) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
        throw InputError("lossy_exact_distribution: mu must lie in [0, 1]");
    }
    if (n < 0 || n > u.rows()) {
        throw InputError("lossy_exact_distribution: photon count outside [0, modes]");
    }
    if (n > kOracleMaxPhotons) {
        throw CapacityError("lossy_exact_distribution: " + std::to_string(n) + " photons exceeds oracle cap " +
                            std::to_string(kOracleMaxPhotons));
    }
    Distribution total;
    std::vector<int> pattern(u.rows(), 0);
    for (unsigned subset = 0; subset < (1u << n); ++subset) {
        int kept = 0;
        for (int i = 0; i < n; ++i) {
            pattern[i] = (subset >> i) & 1u;
            kept += pattern[i];
        }
        const double w = std::pow(mu, kept) * std::pow(1.0 - mu, n - kept);
        if (w == 0.0) {
            continue;
        }
        for (const auto &[out, p] : fock_output_distribution(u, pattern)) {
            total.add(out, w * p);
        }
    }
    return total;
}

TruncatedDistribution thermal_exact_distribution(const ComplexMatrix &u, double lambda, int n, int cutoff) {
    if (cutoff < 1) {
        throw InputError("thermal_exact_distribution: cutoff must be >= 1");
    }
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw InputError("thermal_exact_distribution: lambda must lie in [0, 1)");
    }
    if (n < 1 || n > u.rows()) {
        throw InputError("thermal_exact_distribution: input count outside [1, modes]");
    }
    if (cutoff > kOracleMaxPhotons) {
        throw CapacityError("thermal_exact_distribution: cutoff " + std::to_string(cutoff) +
                            " exceeds oracle cap " + std::to_string(kOracleMaxPhotons));
    }
    TruncatedDistribution result;
    double kept_mass = 0.0;
    std::vector<int> pattern(u.rows(), 0);
    for (int t = 0; t <= cutoff; ++t) {
        const double w = std::pow(1.0 - lambda, n) * std::pow(lambda, t);
        if (w == 0.0) {
            continue;
        }
        for (const auto &k : compositions(t, n)) {
            std::copy(k.counts.begin(), k.counts.end(), pattern.begin());
            kept_mass += w;
            for (const auto &[out, p] : fock_output_distribution(u, pattern)) {
                result.dist.add(out, w * p);
            }
        }
    }
    result.truncation_error = std::max(0.0, 1.0 - kept_mass);
    return result;
}

double chi2_constellation(int m, double lambda, int k_max) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw InputError("chi2_constellation: lambda must lie in [0, 1)");
    }
    if (k_max < 2 * m) {
        throw InputError("chi2_constellation: k_max must be at least 2m");
    }
    if (lambda == 0.0) {
        return 0.0;
    }
    const Constellation c = gauss_hermite_constellation(m);
    // Normalized h_k = He_k / sqrt(k!): h_{k+1} = (x h_k - sqrt(k) h_{k-1}) / sqrt(k+1).
    std::vector<long double> prev(c.size(), 0.0L), cur(c.size(), 1.0L);
    const long double root = std::sqrt(static_cast<long double>(lambda));
    long double scale = 1.0L;
    long double sum = 0.0L;
    for (int k = 0; k < k_max; ++k) {
        long double moment = 0.0L;
        for (int j = 0; j < c.size(); ++j) {
            const long double next = (c.points[j] * cur[j] - std::sqrt(static_cast<long double>(k)) * prev[j]) /
                                     std::sqrt(static_cast<long double>(k + 1));
            prev[j] = cur[j];
            cur[j] = next;
            moment += c.weights[j] * next;
        }
        scale *= root;
        sum += scale * moment * moment;
    }
    return static_cast<double>(sum);
}

}  // namespace lossybs
