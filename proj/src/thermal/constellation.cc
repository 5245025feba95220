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

#include "lossybs/thermal/constellation.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "lossybs/errors.h"

namespace lossybs {

double Constellation::draw(RandomStream &rng) const {
    const double u = rng.uniform() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto idx = std::min<std::size_t>(it - cumulative.begin(), points.size() - 1);
    return static_cast<double>(points[idx]);
}

Constellation gauss_hermite_constellation(int m) {
    if (m < 1 || m > kMaxConstellationSize) {
        throw InputError("gauss_hermite_constellation: size " + std::to_string(m) + " outside [1, " +
                         std::to_string(kMaxConstellationSize) + "]");
    }
    using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    MatrixL jacobi = MatrixL::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        jacobi(k - 1, k) = jacobi(k, k - 1) = std::sqrt(static_cast<long double>(k));
    }
    Eigen::SelfAdjointEigenSolver<MatrixL> solver(jacobi);

    Constellation c;
    c.points.resize(m);
    c.weights.resize(m);
    long double log_m_factorial = 0;
    for (int k = 2; k <= m; ++k) {
        log_m_factorial += std::log(static_cast<long double>(k));
    }
    for (int j = 0; j < m; ++j) {
        // Eigenvector entries lose relative accuracy on the small outer weights, so the
        // eigenvalues are Newton-polished on He_m and weights taken from m! / (m He_{m-1})^2.
        long double x = solver.eigenvalues()[j];
        for (int it = 0; it < 3; ++it) {
            const long double d = m * hermite_he(m - 1, x);
            if (d == 0) {
                break;
            }
            x -= hermite_he(m, x) / d;
        }
        const long double h = hermite_he(m - 1, x);
        c.points[j] = x;
        c.weights[j] = std::exp(log_m_factorial - 2 * std::log(static_cast<long double>(m) * std::fabs(h)));
    }
    // The rule is symmetric about zero; average mirrored pairs so odd moments cancel exactly.
    for (int j = 0; j < m / 2; ++j) {
        const long double x = (c.points[m - 1 - j] - c.points[j]) / 2;
        const long double w = (c.weights[m - 1 - j] + c.weights[j]) / 2;
        c.points[j] = -x;
        c.points[m - 1 - j] = x;
        c.weights[j] = c.weights[m - 1 - j] = w;
    }
    if (m % 2 == 1) {
        c.points[m / 2] = 0;
    }
    long double total = 0;
    for (long double w : c.weights) {
        total += w;
    }
    double running = 0.0;
    c.cumulative.resize(m);
    for (int j = 0; j < m; ++j) {
        c.weights[j] /= total;
        running += static_cast<double>(c.weights[j]);
        c.cumulative[j] = running;
    }
    return c;
}

long double hermite_he(int k, long double x) {
    if (k == 0) {
        return 1;
    }
    long double prev = 1;
    long double cur = x;
    for (int j = 1; j < k; ++j) {
        const long double next = x * cur - j * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

long double hermite_moment(const Constellation &c, int k) {
    long double sum = 0;
    for (int j = 0; j < c.size(); ++j) {
        sum += c.weights[j] * hermite_he(k, c.points[j]);
    }
    return sum;
}

int constellation_size(int n, double eps, double mu) {
    if (n < 1 || !(eps > 0.0)) {
        throw InputError("constellation_size: need n >= 1 and eps > 0");
    }
    if (!(mu > 0.0) || mu >= 1.0 - 1e-6) {
        throw InputError("constellation_size: mu must lie in (0, 1 - 1e-6)");
    }
    const double two_log_three_kappa = 2.0 * std::log(3.0 * std::sqrt(kTwoKappaSquared / 2.0));
    const double numerator =
        std::log(static_cast<double>(n)) + std::log(1.0 / eps) - std::log1p(-mu) + two_log_three_kappa;
    const double m = std::ceil(numerator / std::log(1.0 / mu));
    return std::max(1, static_cast<int>(m));
}

}  // namespace lossybs
