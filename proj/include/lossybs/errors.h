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

#include <stdexcept>
#include <string>

namespace lossybs {

/// Caller passed arguments outside an operation's domain.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The physical model is violated (e.g. a transfer matrix with a singular value above one).
struct ModelError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A configured resource ceiling (oracle size, bond dimension) was exceeded.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

}  // namespace lossybs
