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

#include "lossybs/mps/fock_amplitudes.h"

#include <cmath>
#include <string>

#include "lossybs/errors.h"

namespace lossybs {

FockTensor4::FockTensor4(int cutoff) : cutoff_(cutoff) {
    const std::size_t d = cutoff + 1;
    data_.assign(d * d * d * d, Complex(0.0, 0.0));
}

Complex &FockTensor4::operator()(int out1, int out2, int in1, int in2) {
    const int d = dim();
    return data_[((out1 * d + out2) * d + in1) * d + in2];
}

Complex FockTensor4::operator()(int out1, int out2, int in1, int in2) const {
    const int d = dim();
    return data_[((out1 * d + out2) * d + in1) * d + in2];
}

namespace {

std::vector<Complex> powers(Complex z, int n) {
    std::vector<Complex> p(n + 1);
    p[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        p[i] = p[i - 1] * z;
    }
    return p;
}

}  // namespace

FockTensor4 coupler_fock_amplitudes(const Eigen::Matrix2cd &block, int cutoff) {
    if (cutoff < 0 || cutoff > kMaxLocalCutoff) {
        throw InputError("coupler_fock_amplitudes: cutoff " + std::to_string(cutoff) + " outside [0, " +
                         std::to_string(kMaxLocalCutoff) + "]");
    }
    if (unitarity_error(block) > 1e-10) {
        throw InputError("coupler_fock_amplitudes: block is not unitary");
    }
    std::vector<double> log_fact(2 * cutoff + 2, 0.0);
    for (std::size_t i = 1; i < log_fact.size(); ++i) {
        log_fact[i] = log_fact[i - 1] + std::log(static_cast<double>(i));
    }
    auto log_binom = [&](int n, int k) { return log_fact[n] - log_fact[k] - log_fact[n - k]; };

    const auto pa = powers(block(0, 0), cutoff);
    const auto pb = powers(block(0, 1), cutoff);
    const auto pc = powers(block(1, 0), cutoff);
    const auto pd = powers(block(1, 1), cutoff);

    FockTensor4 t(cutoff);
    for (int n1 = 0; n1 <= cutoff; ++n1) {
        for (int n2 = 0; n2 <= cutoff; ++n2) {
            const int total = n1 + n2;
            // (a x + c y)^n1 (b x + d y)^n2, x^j y^(n1-j) from the first factor, x^l y^(n2-l) from the second.
            for (int m1 = std::max(0, total - cutoff); m1 <= std::min(total, cutoff); ++m1) {
                const int m2 = total - m1;
                const double norm = 0.5 * (log_fact[m1] + log_fact[m2] - log_fact[n1] - log_fact[n2]);
                Complex amp(0.0, 0.0);
                for (int j = std::max(0, m1 - n2); j <= std::min(n1, m1); ++j) {
                    const int l = m1 - j;
                    const double mag = std::exp(log_binom(n1, j) + log_binom(n2, l) + norm);
                    amp += mag * pa[j] * pc[n1 - j] * pb[l] * pd[n2 - l];
                }
                t(m1, m2, n1, n2) = amp;
            }
        }
    }
    return t;
}

FockTensor4 CouplerMPO::recombine() const {
    const int d = dim();
    const ComplexMatrix b = left * sigmas.cast<Complex>().asDiagonal() * right.transpose();
    FockTensor4 t(cutoff);
    for (int n1 = 0; n1 < d; ++n1) {
        for (int o1 = 0; o1 < d; ++o1) {
            for (int n2 = 0; n2 < d; ++n2) {
                for (int o2 = 0; o2 < d; ++o2) {
                    t(o1, o2, n1, n2) = b(n1 * d + o1, n2 * d + o2);
                }
            }
        }
    }
    return t;
}

CouplerMPO make_coupler_mpo(const Eigen::Matrix2cd &block, int cutoff) {
    const FockTensor4 t = coupler_fock_amplitudes(block, cutoff);
    const int d = cutoff + 1;
    ComplexMatrix b(d * d, d * d);
    for (int n1 = 0; n1 < d; ++n1) {
        for (int o1 = 0; o1 < d; ++o1) {
            for (int n2 = 0; n2 < d; ++n2) {
                for (int o2 = 0; o2 < d; ++o2) {
                    b(n1 * d + o1, n2 * d + o2) = t(o1, o2, n1, n2);
                }
            }
        }
    }
    Eigen::JacobiSVD<ComplexMatrix> s(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &sv = s.singularValues();
    int rank = 0;
    while (rank < sv.size() && sv[rank] > 1e-12 * sv[0]) {
        ++rank;
    }
    CouplerMPO mpo;
    mpo.cutoff = cutoff;
    mpo.left = s.matrixU().leftCols(rank);
    mpo.sigmas = sv.head(rank);
    mpo.right = s.matrixV().leftCols(rank).conjugate();
    return mpo;
}

}  // namespace lossybs
