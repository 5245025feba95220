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

#include "lossybs/numerics/distribution.h"

#include <cmath>
#include <numeric>

#include "lossybs/errors.h"

namespace lossybs {

int FockSample::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0);
}

void Distribution::add(const FockSample &outcome, double weight) {
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
        throw InputError("Distribution: weights must be finite and non-negative");
    }
    weights_[outcome] += weight;
}

double Distribution::weight(const FockSample &outcome) const {
    auto it = weights_.find(outcome);
    return it == weights_.end() ? 0.0 : it->second;
}

double Distribution::total_weight() const {
    double total = 0.0;
    for (const auto &[outcome, w] : weights_) {
        total += w;
    }
    return total;
}

bool Distribution::is_normalized(double tolerance) const {
    return std::abs(total_weight() - 1.0) <= tolerance;
}

Distribution Distribution::empirical(std::span<const FockSample> samples) {
    Distribution d;
    if (samples.empty()) {
        return d;
    }
    const double w = 1.0 / static_cast<double>(samples.size());
    for (const auto &s : samples) {
        d.add(s, w);
    }
    return d;
}

double total_variation(const Distribution &p, const Distribution &q) {
    // Merge-walk of the two ordered supports.
    double sum = 0.0;
    auto a = p.begin();
    auto b = q.begin();
    while (a != p.end() || b != q.end()) {
        if (b == q.end() || (a != p.end() && a->first < b->first)) {
            sum += a->second;
            ++a;
        } else if (a == p.end() || b->first < a->first) {
            sum += b->second;
            ++b;
        } else {
            sum += std::abs(a->second - b->second);
            ++a;
            ++b;
        }
    }
    return 0.5 * sum;
}

}  // namespace lossybs
