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

#include <vector>

#include "lossybs/numerics/random.h"

namespace lossybs {

inline constexpr int kMaxConstellationSize = 64;
/// 2 kappa^2 of the constellation chi^2 bound.
inline constexpr double kTwoKappaSquared = 2.36;

/// Gauss-Hermite discretization of the standard normal: nodes are the roots of
/// the probabilists' Hermite polynomial He_m, weights integrate polynomials of
/// degree <= 2m - 1 exactly. Kept in extended precision; at m = 10 the moment
/// sums cancel across eight orders of magnitude.
struct Constellation {
    std::vector<long double> points;
    std::vector<long double> weights;
    /// Running sums of weights for inverse-CDF draws.
    std::vector<double> cumulative;

    int size() const {
        return static_cast<int>(points.size());
    }
    /// Draws one node according to the weights.
    double draw(RandomStream &rng) const;
};

/// Golub-Welsch: eigenvalues of the symmetric Jacobi matrix (off-diagonal sqrt(k))
/// give the nodes, squared first eigenvector components the weights.
Constellation gauss_hermite_constellation(int m);

/// He_k(x) by the three-term recurrence.
long double hermite_he(int k, long double x);

/// sum_j w_j He_k(x_j)
long double hermite_moment(const Constellation &c, int k);

/// ceil of [log N + log(1/eps) + log(1/(1-mu)) + 2 log(3 kappa)] / log(1/mu), at least 1.
/// Throws InputError for mu outside (0, 1 - 1e-6).
int constellation_size(int n, double eps, double mu);

}  // namespace lossybs
