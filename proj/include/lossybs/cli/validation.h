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
#include <string>
#include <vector>

#include <json.hpp>

#include "lossybs/thermal/constellation.h"

namespace lossybs::cli {

enum class CheckStatus { Pass, Fail, Skipped };
const char *status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationOptions {
    uint64_t seed = 1;
    std::size_t samples = 100000;
    /// Constant of the chi^2 budget; overriding it exercises the failure path.
    double two_kappa_squared = kTwoKappaSquared;
    /// Photon number of the sampled oracle comparisons (thermal end-to-end, lossy input).
    int oracle_photons = 2;
    int workers = 1;
};

CheckResult check_thermalization_depth();
CheckResult check_erasure_distance_grid();
CheckResult check_mps_oracle(const ValidationOptions &opts);
CheckResult check_hong_ou_mandel(const ValidationOptions &opts);
CheckResult check_thermal_sampler(const ValidationOptions &opts);
CheckResult check_lossy_input(const ValidationOptions &opts);
CheckResult check_quadrature();
CheckResult check_poisson_bound();
CheckResult check_chi2_budget(const ValidationOptions &opts);
CheckResult check_bond_growth(const ValidationOptions &opts);
CheckResult check_loss_model(const ValidationOptions &opts);
CheckResult check_algebraic_threshold();
CheckResult check_determinism(const ValidationOptions &opts);

/// Every check above in order. A CapacityError inside a check marks it skipped.
std::vector<CheckResult> run_validation_suite(const ValidationOptions &opts);

/// {"checks": [...], "passed": n, "failed": n, "skipped": n}
nlohmann::json report_to_json(const std::vector<CheckResult> &results);

/// Exact TVD between Binomial(t, x/t) and Poisson(x) by pmf enumeration.
double binomial_poisson_tvd(double x, int t);

}  // namespace lossybs::cli
