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

#include "lossybs/numerics/linalg.h"

#include <cmath>

#include "lossybs/errors.h"

namespace lossybs {

ComplexMatrix SingularSystem::reconstruct() const {
    return left * singulars.cast<Complex>().asDiagonal() * right;
}

bool all_finite(const ComplexMatrix &a) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const Complex z = a.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

double max_abs(const ComplexMatrix &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double unitarity_error(const ComplexMatrix &u) {
    const auto n = u.cols();
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n));
}

SingularSystem svd(const ComplexMatrix &a) {
    if (!all_finite(a)) {
        throw InputError("svd: matrix has non-finite entries");
    }
    Eigen::JacobiSVD<ComplexMatrix> decomposition(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return SingularSystem{
        decomposition.matrixU(),
        decomposition.singularValues(),
        decomposition.matrixV().adjoint(),
    };
}

ComplexMatrix haar_unitary(std::size_t m, RandomStream &rng) {
    if (m == 0) {
        throw InputError("haar_unitary: dimension must be at least 1");
    }
    const auto n = static_cast<Eigen::Index>(m);
    ComplexMatrix z(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = Complex(re, im) * M_SQRT1_2;
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0 ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace lossybs
