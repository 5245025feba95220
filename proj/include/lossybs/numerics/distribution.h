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

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace lossybs {

/// One detected outcome: photon count per output mode.
struct FockSample {
    std::vector<int> counts;

    int total() const;
    std::size_t modes() const {
        return counts.size();
    }
    auto operator<=>(const FockSample &) const = default;
};

/// Finite distribution over Fock outcomes, kept in lexicographic order of outcomes.
///
/// Weights are not renormalized on insertion; truncated references (thermal
/// input with a photon cutoff) legitimately sum to slightly less than one.
class Distribution {
   public:
    Distribution() = default;

    /// Adds weight to an outcome (merging duplicates). Negative weights throw InputError.
    void add(const FockSample &outcome, double weight);
    double weight(const FockSample &outcome) const;
    double total_weight() const;
    std::size_t size() const {
        return weights_.size();
    }
    bool empty() const {
        return weights_.empty();
    }
    bool is_normalized(double tolerance = 1e-10) const;

    const std::map<FockSample, double> &entries() const {
        return weights_;
    }
    auto begin() const {
        return weights_.begin();
    }
    auto end() const {
        return weights_.end();
    }

    static Distribution empirical(std::span<const FockSample> samples);

   private:
    std::map<FockSample, double> weights_;
};

/// 1/2 sum |p - q| over the union of supports (absent outcomes weigh zero).
double total_variation(const Distribution &p, const Distribution &q);

}  // namespace lossybs
