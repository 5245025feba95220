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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "lossybs/numerics/random.h"

namespace lossybs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// a = left * diag(singulars) * right, singulars non-increasing.
struct SingularSystem {
    ComplexMatrix left;
    Eigen::VectorXd singulars;
    ComplexMatrix right;

    ComplexMatrix reconstruct() const;
};

SingularSystem svd(const ComplexMatrix &a);

/// Haar-distributed m x m unitary (QR of a complex Gaussian matrix, R's diagonal phases removed).
ComplexMatrix haar_unitary(std::size_t m, RandomStream &rng);

bool all_finite(const ComplexMatrix &a);
double max_abs(const ComplexMatrix &a);
/// max |(U^dagger U - I)_ij|
double unitarity_error(const ComplexMatrix &u);

}  // namespace lossybs
