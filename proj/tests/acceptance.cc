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

// One line per acceptance criterion; exit status is the number of failures.
#include <cstdio>
#include <functional>
#include <vector>

#include "lossybs/cli/validation.h"
#include "lossybs/errors.h"

using namespace lossybs::cli;

int main() {
    ValidationOptions opts;
    opts.seed = 20261016;
    const std::vector<std::pair<const char *, std::function<CheckResult()>>> criteria = {
        {"threshold reproduction D~(100, 1e-6, 1e-3) = 9205.7", [] { return check_thermalization_depth(); }},
        {"thermal/erasure distance = mu^2 and N mu^2 <= eps", [] { return check_erasure_distance_grid(); }},
        {"MPS vs permanent oracle, 50 circuits", [&] { return check_mps_oracle(opts); }},
        {"Hong-Ou-Mandel zero coincidence", [&] { return check_hong_ou_mandel(opts); }},
        {"thermal sampler end-to-end TVD", [&] { return check_thermal_sampler(opts); }},
        {"lossy-input MPS thinning vs exact", [&] { return check_lossy_input(opts); }},
        {"Gauss-Hermite quadrature exactness", [] { return check_quadrature(); }},
        {"Binomial/Poisson TVD bound", [] { return check_poisson_bound(); }},
        {"chi^2 constellation budget", [&] { return check_chi2_budget(opts); }},
        {"bond-growth bound", [&] { return check_bond_growth(opts); }},
        {"loss model mu_i = tau^D and factorization", [&] { return check_loss_model(opts); }},
        {"algebraic threshold D* = 9", [] { return check_algebraic_threshold(); }},
        {"run_sample determinism", [&] { return check_determinism(opts); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        CheckResult r;
        try {
            r = criteria[i].second();
        } catch (const std::exception &e) {
            r.status = CheckStatus::Fail;
            r.detail = std::string("error: ") + e.what();
        }
        const bool pass = r.status == CheckStatus::Pass;
        failures += !pass;
        std::printf("[%s] #%zu %s: value %.6g tolerance %.6g (%s)\n", pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first, r.value, r.tolerance, r.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
