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

#include "lossybs/circuit/loss.h"

#include "lossybs/errors.h"

namespace lossybs {

ComplexMatrix LossDecomposition::recombine() const {
    return v * mu.cwiseSqrt().cast<Complex>().asDiagonal() * w;
}

LossDecomposition decompose_losses(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw InputError("decompose_losses: transfer matrix must be square");
    }
    SingularSystem s = svd(a);
    Eigen::VectorXd mu(s.singulars.size());
    for (Eigen::Index i = 0; i < s.singulars.size(); ++i) {
        double sv = s.singulars[i];
        if (sv > 1.0 + kSingularClipTolerance) {
            throw ModelError("decompose_losses: singular value " + std::to_string(sv) +
                             " exceeds one; A A^dagger <= I is violated");
        }
        sv = std::min(sv, 1.0);
        mu[i] = sv * sv;
    }
    return LossDecomposition{std::move(s.left), std::move(mu), std::move(s.right)};
}

NonuniformFactor factor_nonuniform(const LossDecomposition &d) {
    const double mu_max = d.mu.size() == 0 ? 0.0 : d.mu.maxCoeff();
    if (!(mu_max > 0.0)) {
        throw ModelError("factor_nonuniform: every channel has zero transmission");
    }
    LossDecomposition residual{d.v, d.mu / mu_max, d.w};
    return NonuniformFactor{mu_max, std::move(residual)};
}

}  // namespace lossybs
