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

#include <span>
#include <vector>

#include "lossybs/numerics/distribution.h"
#include "lossybs/numerics/linalg.h"

namespace lossybs {

inline constexpr int kOracleMaxPhotons = 8;
inline constexpr int kOracleMaxModes = 8;

/// All ways to place `total` photons in `modes` modes, in lexicographic order.
std::vector<FockSample> compositions(int total, int modes);

/// p(n) = |Perm(U[n, s])|^2 / (prod s_i! prod n_j!) over every outcome with the
/// input's photon count, where U[n, s] repeats row j n_j times and column i s_i times.
/// Throws InputError for non-unitary u or a bad input, CapacityError beyond 8 photons or 8 modes.
Distribution fock_output_distribution(const ComplexMatrix &u, std::span<const int> input);
/// Same values, one outcome at a time on the calling thread.
Distribution fock_output_distribution_serial(const ComplexMatrix &u, std::span<const int> input);

/// Single photons on modes 0..n-1, each kept with probability mu, then u.
Distribution lossy_exact_distribution(const ComplexMatrix &u, double mu, int n);

struct TruncatedDistribution {
    Distribution dist;
    /// Input mass beyond the cutoff, 1 - sum_{T <= cutoff} C(T+n-1, n-1) (1-lambda)^n lambda^T.
    double truncation_error = 0.0;
};

/// Thermal inputs (lambda) on modes 0..n-1, every input with at most `cutoff` photons in total.
TruncatedDistribution thermal_exact_distribution(const ComplexMatrix &u, double lambda, int n, int cutoff);

/// sum_{k=1}^{k_max} lambda^{k/2} (E[He_k(X_m)])^2 / k!, X_m the m-point Gauss-Hermite
/// variable; chi^2 between the constellation law and the standard normal, scaled by lambda.
double chi2_constellation(int m, double lambda, int k_max);

}  // namespace lossybs
