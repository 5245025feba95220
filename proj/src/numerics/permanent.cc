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

#include "lossybs/numerics/permanent.h"

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "lossybs/errors.h"

namespace lossybs {
namespace {

void check_shape(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw InputError("permanent: matrix must be square");
    }
    if (a.rows() > kMaxPermanentSize) {
        throw CapacityError("permanent: size " + std::to_string(a.rows()) + " exceeds cap " +
                            std::to_string(kMaxPermanentSize));
    }
}

// Sum of Glynn terms for Gray-code indices [begin, end). Row 0 keeps delta = +1;
// bit b of the Gray code flips the sign of row b + 1. `rows` holds the matrix
// transposed so that each row is contiguous. Products are written out in real
// arithmetic; std::complex multiplication goes through the NaN-recovering slow path.
Complex glynn_range(const ComplexMatrix &rows, uint64_t begin, uint64_t end) {
    const Eigen::Index n = rows.cols();
    const uint64_t gray = begin ^ (begin >> 1);
    std::vector<double> delta(n, 1.0);
    for (Eigen::Index r = 1; r < n; ++r) {
        if ((gray >> (r - 1)) & 1) {
            delta[r] = -1.0;
        }
    }
    std::vector<double> re(n, 0.0), im(n, 0.0);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index j = 0; j < n; ++j) {
            re[j] += delta[r] * rows(j, r).real();
            im[j] += delta[r] * rows(j, r).imag();
        }
    }
    double sign = (std::popcount(gray) & 1) ? -1.0 : 1.0;

    double total_re = 0.0, total_im = 0.0;
    for (uint64_t k = begin;;) {
        double pr = re[0], pi = im[0];
        for (Eigen::Index j = 1; j < n; ++j) {
            const double t = pr * re[j] - pi * im[j];
            pi = pr * im[j] + pi * re[j];
            pr = t;
        }
        total_re += sign * pr;
        total_im += sign * pi;
        if (++k >= end) {
            break;
        }
        const Eigen::Index r = std::countr_zero(k) + 1;
        delta[r] = -delta[r];
        const double step = 2.0 * delta[r];
        const Complex *row = rows.col(r).data();
        for (Eigen::Index j = 0; j < n; ++j) {
            re[j] += step * row[j].real();
            im[j] += step * row[j].imag();
        }
        sign = -sign;
    }
    return {total_re, total_im};
}

Complex trivial_cases(const ComplexMatrix &a, bool &handled) {
    handled = true;
    if (a.rows() == 0) {
        return Complex(1.0, 0.0);
    }
    if (a.rows() == 1) {
        return a(0, 0);
    }
    handled = false;
    return {};
}

}  // namespace

Complex permanent_serial(const ComplexMatrix &a) {
    check_shape(a);
    bool handled;
    Complex t = trivial_cases(a, handled);
    if (handled) {
        return t;
    }
    const uint64_t terms = uint64_t{1} << (a.rows() - 1);
    return glynn_range(a.transpose(), 0, terms) / static_cast<double>(terms);
}

Complex permanent(const ComplexMatrix &a) {
    check_shape(a);
    bool handled;
    Complex t = trivial_cases(a, handled);
    if (handled) {
        return t;
    }
    const uint64_t terms = uint64_t{1} << (a.rows() - 1);
    constexpr uint64_t kChunkTerms = 1 << 12;
    const ComplexMatrix rows = a.transpose();
    if (terms <= kChunkTerms) {
        return glynn_range(rows, 0, terms) / static_cast<double>(terms);
    }
    const int64_t chunks = static_cast<int64_t>(terms / kChunkTerms);
    std::vector<Complex> partial(chunks);
#pragma omp parallel for schedule(static)
    for (int64_t c = 0; c < chunks; ++c) {
        partial[c] = glynn_range(rows, c * kChunkTerms, (c + 1) * kChunkTerms);
    }
    Complex total(0.0, 0.0);
    for (const Complex &p : partial) {
        total += p;
    }
    return total / static_cast<double>(terms);
}

}  // namespace lossybs
