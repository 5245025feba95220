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

#include "lossybs/numerics/random.h"

namespace lossybs {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {
}

RandomStream RandomStream::split(uint64_t index) const {
    return RandomStream(splitmix64(seed_ ^ splitmix64(index + 1)));
}

double RandomStream::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RandomStream::normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

}  // namespace lossybs
