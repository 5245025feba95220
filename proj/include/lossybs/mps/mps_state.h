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

#include <optional>
#include <span>
#include <vector>

#include "lossybs/mps/fock_amplitudes.h"
#include "lossybs/numerics/distribution.h"
#include "lossybs/numerics/random.h"

namespace lossybs {

/// Matrix product state in Vidal canonical form:
///   psi(n_1..n_M) = Gamma[1]_{n_1} lambda[1] Gamma[2]_{n_2} lambda[2] ... Gamma[M]_{n_M}.
/// gammas[i][n] is chi_{i-1} x chi_i, schmidts[b] holds the Schmidt values of the
/// cut between modes b and b+1 (M - 1 bonds; the outer boundaries are the scalar 1).
struct MPSState {
    int cutoff = 0;
    std::vector<std::vector<ComplexMatrix>> gammas;
    std::vector<Eigen::VectorXd> schmidts;

    int modes() const {
        return static_cast<int>(gammas.size());
    }
    int local_dim() const {
        return cutoff + 1;
    }
    int bond_dim(int bond) const {
        return static_cast<int>(schmidts[bond].size());
    }
    int max_bond() const;
    /// Schmidt vector left of `mode` (boundary: {1}).
    Eigen::VectorXd left_schmidt(int mode) const;
    Eigen::VectorXd right_schmidt(int mode) const;
};

/// Product Fock state with one photon on every mode whose pattern entry is 1; all bonds have dimension 1.
MPSState init_input(std::span<const int> pattern, int cutoff);

/// Multiplies Gamma[mode]_n by e^{i theta n}; Schmidt values are untouched.
void apply_phase(MPSState &s, int mode, double theta);

struct CouplerUpdate {
    int bond_before = 0;
    int bond_merged = 0;  // chi_k * chi_BS before re-orthogonalization
    int bond_after = 0;
};

/// Contracts the coupler MPO factors into Gamma[k] and Gamma[k+1], merges the
/// chi_k x chi_BS bond, and restores the canonical form on that bond by QR of both
/// sides and an SVD of the small core. Only Schmidt values below 1e-12 of the
/// largest are dropped. Throws CapacityError if the new bond exceeds max_bond.
CouplerUpdate apply_coupler(MPSState &s, int k, const CouplerMPO &mpo, int max_bond = 1 << 16);

/// <psi|psi> by full transfer-matrix contraction (no canonical-form assumption).
double norm_squared(const MPSState &s);

/// <n_i> per mode, read off the canonical form.
std::vector<double> mode_occupations(const MPSState &s);

/// |<nbar|psi>|^2. Throws InputError if an entry exceeds the cutoff or the length differs.
double outcome_probability(const MPSState &s, const FockSample &nbar);

/// Exact chain-rule sample. Returns nullopt if the running prefix weight underflows (< 1e-300).
std::optional<FockSample> sample(const MPSState &s, RandomStream &rng);

/// Full sweep (right-to-left, then left-to-right) that rebuilds the Vidal form and
/// normalizes the state. Returns the norm before normalization.
double canonicalize(MPSState &s);

}  // namespace lossybs
