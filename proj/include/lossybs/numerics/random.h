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
#include <random>

namespace lossybs {

/// Seedable random source passed explicitly into every stochastic operation.
///
/// A stream is single-owner. Parallel callers derive independent streams with
/// split(); the derived seed depends only on this stream's seed and the index,
/// not on how many numbers have already been drawn.
class RandomStream {
   public:
    explicit RandomStream(uint64_t seed);

    RandomStream split(uint64_t index) const;

    uint64_t seed() const {
        return seed_;
    }
    double uniform();
    double normal();
    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

uint64_t splitmix64(uint64_t x);

}  // namespace lossybs
