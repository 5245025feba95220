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

#include <string>

namespace lossybs {

/// Experiment scaling parameters. Photons follow N = k M^gamma.
struct PlanParameters {
    int photons = 1;
    int modes = 1;
    double k = 1.0;
    double gamma = 1.0;
    double epsilon = 0.01;
    /// Transmission per layer of gates.
    double tau = 1.0;
    int depth = 0;

    /// round(k M^gamma)
    static int derive_photons(double k, double gamma, int modes);
    /// Throws InputError on out-of-range fields.
    void validate() const;
};

/// Transmission mu = (1 + D / scale)^(-exponent).
struct AlgebraicLossParams {
    double scale = 1.0;
    double exponent = 1.0;
};

enum class Regime { Thermal, TensorNetwork };

const char *regime_name(Regime r);

struct SimulationPlan {
    Regime regime = Regime::TensorNetwork;
    double d_star = 0.0;
    double mu_effective = 1.0;
    std::string rationale;
};

/// mu <= sqrt(eps / N), evaluated as N mu^2 <= eps.
bool simulability_condition(double mu, int n, double eps);

/// Depth above which N photons with per-coupler loss x are eps-close to thermal noise:
/// log(N / eps) / (2 log(1 / (1 - x))). Returns +infinity when x == 0.
double thermalization_depth(int n, double eps, double x);

/// D* = [gamma log M + log(k / eps) + log 2] / (2 log(1 / tau)); +infinity when tau == 1.
double depth_threshold_exponential(const PlanParameters &p);

struct AlgebraicThreshold {
    double d_star;
    double gamma_over_beta;
    /// gamma / beta < 2: D* <= M - 1 eventually holds for large M.
    bool asymptotically_simulable;
};

/// D* = scale [(2k / eps)^(1 / 2beta) M^(gamma / 2beta) - 1].
AlgebraicThreshold depth_threshold_algebraic(const PlanParameters &p, const AlgebraicLossParams &a);

/// Thermal iff depth >= D* (exponential decay threshold); mu_effective = tau^D.
SimulationPlan plan(const PlanParameters &p);

}  // namespace lossybs
