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

#include "lossybs/circuit/thresholds.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "lossybs/errors.h"

namespace lossybs {

int PlanParameters::derive_photons(double k, double gamma, int modes) {
    return static_cast<int>(std::lround(k * std::pow(static_cast<double>(modes), gamma)));
}

void PlanParameters::validate() const {
    if (photons < 1 || modes < 1) {
        throw InputError("plan parameters: photons and modes must be positive");
    }
    if (!(k > 0.0 && k <= 1.0)) {
        throw InputError("plan parameters: k must lie in (0, 1]");
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw InputError("plan parameters: gamma must lie in (0, 1]");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InputError("plan parameters: epsilon must lie in (0, 1)");
    }
    if (!(tau > 0.0 && tau <= 1.0)) {
        throw InputError("plan parameters: tau must lie in (0, 1]");
    }
    if (depth < 0) {
        throw InputError("plan parameters: depth must be non-negative");
    }
}

const char *regime_name(Regime r) {
    return r == Regime::Thermal ? "thermal" : "tensor_network";
}

bool simulability_condition(double mu, int n, double eps) {
    return static_cast<double>(n) * mu * mu <= eps;
}

double thermalization_depth(int n, double eps, double x) {
    if (n < 1 || !(eps > 0.0) || !(x >= 0.0 && x < 1.0)) {
        throw InputError("thermalization_depth: need n >= 1, eps > 0, 0 <= x < 1");
    }
    if (x == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::log(static_cast<double>(n) / eps) / (2.0 * -std::log1p(-x));
}

double depth_threshold_exponential(const PlanParameters &p) {
    if (p.tau >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double numerator = p.gamma * std::log(static_cast<double>(p.modes)) + std::log(p.k / p.epsilon) +
                             std::log(2.0);
    return numerator / (2.0 * std::log(1.0 / p.tau));
}

AlgebraicThreshold depth_threshold_algebraic(const PlanParameters &p, const AlgebraicLossParams &a) {
    if (!(a.scale > 0.0) || !(a.exponent > 0.0)) {
        throw InputError("depth_threshold_algebraic: scale and exponent must be positive");
    }
    const double two_beta = 2.0 * a.exponent;
    const double growth = std::pow(2.0 * p.k / p.epsilon, 1.0 / two_beta) *
                          std::pow(static_cast<double>(p.modes), p.gamma / two_beta);
    const double ratio = p.gamma / a.exponent;
    return AlgebraicThreshold{a.scale * (growth - 1.0), ratio, ratio < 2.0};
}

SimulationPlan plan(const PlanParameters &p) {
    p.validate();
    SimulationPlan out;
    out.d_star = depth_threshold_exponential(p);
    out.mu_effective = std::pow(p.tau, p.depth);
    out.regime = static_cast<double>(p.depth) >= out.d_star ? Regime::Thermal : Regime::TensorNetwork;

    const bool full_budget = simulability_condition(out.mu_effective, p.photons, p.epsilon);
    const bool half_budget = simulability_condition(out.mu_effective, p.photons, p.epsilon / 2.0);
    std::ostringstream why;
    why.precision(10);
    why << "depth " << p.depth;
    if (std::isinf(out.d_star)) {
        why << ", D* infinite (lossless layers): thermal regime unreachable";
    } else {
        why << (out.regime == Regime::Thermal ? " >= " : " < ") << "D* = " << out.d_star;
    }
    why << "; mu = tau^D = " << out.mu_effective << ", mu <= sqrt(eps/N) " << (full_budget ? "holds" : "fails")
        << ", mu <= sqrt(eps/(2N)) " << (half_budget ? "holds" : "fails");
    out.rationale = why.str();
    return out;
}

}  // namespace lossybs
