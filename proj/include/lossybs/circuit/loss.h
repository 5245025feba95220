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

#include "lossybs/numerics/linalg.h"

namespace lossybs {

/// A = v * diag(sqrt(mu)) * w: lossless v and w around M parallel pure-loss channels.
struct LossDecomposition {
    ComplexMatrix v;
    Eigen::VectorXd mu;
    ComplexMatrix w;

    ComplexMatrix recombine() const;
};

inline constexpr double kSingularClipTolerance = 1e-9;

/// Singular values in (1, 1 + 1e-9] are clipped to one; larger ones throw ModelError.
LossDecomposition decompose_losses(const ComplexMatrix &a);

struct NonuniformFactor {
    double mu_max;
    /// Same v and w, transmissions mu_i / mu_max.
    LossDecomposition residual;
};

/// Splits every channel into a common mu_max stage followed by mu_i / mu_max.
/// Throws ModelError when all transmissions vanish.
NonuniformFactor factor_nonuniform(const LossDecomposition &d);

}  // namespace lossybs
