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

inline constexpr int kMaxPermanentSize = 20;

/// Glynn's formula with Gray-code ordering, O(2^n n). The Gray sequence is cut
/// into fixed chunks evaluated in parallel and summed in chunk order, so the
/// result does not depend on the thread count.
Complex permanent(const ComplexMatrix &a);

/// Single-threaded evaluation of the same sum; reference for permanent().
Complex permanent_serial(const ComplexMatrix &a);

}  // namespace lossybs
