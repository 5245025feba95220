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

#include "lossybs/numerics/linalg.h"

namespace lossybs {

inline constexpr int kMaxLocalCutoff = 30;

/// <out1, out2| B |in1, in2> for a two-mode coupler on Fock states truncated at d photons per mode.
class FockTensor4 {
   public:
    explicit FockTensor4(int cutoff);

    int cutoff() const {
        return cutoff_;
    }
    int dim() const {
        return cutoff_ + 1;
    }
    Complex &operator()(int out1, int out2, int in1, int in2);
    Complex operator()(int out1, int out2, int in1, int in2) const;

   private:
    int cutoff_;
    std::vector<Complex> data_;
};

/// Amplitudes of a 2x2 unitary [[a, b], [c, d]] acting by a1^dag -> a a1^dag + c a2^dag,
/// a2^dag -> b a1^dag + d a2^dag. Zero unless photon number is conserved.
/// Factorials enter through a log table, so cutoffs up to 30 stay finite.
FockTensor4 coupler_fock_amplitudes(const Eigen::Matrix2cd &block, int cutoff);

/// Singular-value split of the coupler across the (mode k) | (mode k+1) cut:
/// B[(n_k, n'_k), (n_{k+1}, n'_{k+1})] = sum_g left(n_k*D + n'_k, g) sigma_g right(n_{k+1}*D + n'_{k+1}, g).
struct CouplerMPO {
    int cutoff = 0;
    ComplexMatrix left;
    Eigen::VectorXd sigmas;
    ComplexMatrix right;

    int rank() const {
        return static_cast<int>(sigmas.size());
    }
    int dim() const {
        return cutoff + 1;
    }
    /// Rebuilds the four-index tensor from the factors.
    FockTensor4 recombine() const;
};

/// Singular values below 1e-12 of the largest are dropped; rank <= (d+1)^2.
CouplerMPO make_coupler_mpo(const Eigen::Matrix2cd &block, int cutoff);

}  // namespace lossybs
