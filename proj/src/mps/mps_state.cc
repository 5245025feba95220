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

#include "lossybs/mps/mps_state.h"

#include <cmath>
#include <string>

#include "lossybs/errors.h"

namespace lossybs {
namespace {

constexpr double kZeroSchmidt = 1e-12;

int kept_rank(const Eigen::VectorXd &sv) {
    int r = 0;
    while (r < sv.size() && sv[r] > kZeroSchmidt * sv[0]) {
        ++r;
    }
    return r;
}

// Orthonormal column basis and triangular factor: m = q * r.
void thin_qr(const ComplexMatrix &m, ComplexMatrix &q, ComplexMatrix &r) {
    const Eigen::Index k = std::min(m.rows(), m.cols());
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    q = qr.householderQ() * ComplexMatrix::Identity(m.rows(), k);
    r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

}  // namespace

int MPSState::max_bond() const {
    int best = 1;
    for (const auto &l : schmidts) {
        best = std::max(best, static_cast<int>(l.size()));
    }
    return best;
}

Eigen::VectorXd MPSState::left_schmidt(int mode) const {
    return mode == 0 ? Eigen::VectorXd::Ones(1) : schmidts[mode - 1];
}

Eigen::VectorXd MPSState::right_schmidt(int mode) const {
    return mode == modes() - 1 ? Eigen::VectorXd::Ones(1) : schmidts[mode];
}

MPSState init_input(std::span<const int> pattern, int cutoff) {
    if (cutoff < 1 || cutoff > kMaxLocalCutoff) {
        throw InputError("init_input: cutoff must lie in [1, " + std::to_string(kMaxLocalCutoff) + "]");
    }
    if (pattern.empty()) {
        throw InputError("init_input: at least one mode is required");
    }
    MPSState s;
    s.cutoff = cutoff;
    for (int occupancy : pattern) {
        if (occupancy != 0 && occupancy != 1) {
            throw InputError("init_input: pattern entries must be 0 or 1");
        }
        std::vector<ComplexMatrix> site(cutoff + 1, ComplexMatrix::Zero(1, 1));
        site[occupancy](0, 0) = 1.0;
        s.gammas.push_back(std::move(site));
    }
    s.schmidts.assign(pattern.size() - 1, Eigen::VectorXd::Ones(1));
    return s;
}

void apply_phase(MPSState &s, int mode, double theta) {
    if (mode < 0 || mode >= s.modes()) {
        throw InputError("apply_phase: mode out of range");
    }
    for (int n = 0; n <= s.cutoff; ++n) {
        s.gammas[mode][n] *= std::polar(1.0, theta * n);
    }
}

CouplerUpdate apply_coupler(MPSState &s, int k, const CouplerMPO &mpo, int max_bond) {
    if (k < 0 || k + 1 >= s.modes()) {
        throw InputError("apply_coupler: modes " + std::to_string(k) + ", " + std::to_string(k + 1) +
                         " out of range");
    }
    if (mpo.cutoff != s.cutoff) {
        throw InputError("apply_coupler: coupler built for cutoff " + std::to_string(mpo.cutoff) +
                         ", state has " + std::to_string(s.cutoff));
    }
    const int d = s.local_dim();
    const int r = mpo.rank();
    auto &left_site = s.gammas[k];
    auto &right_site = s.gammas[k + 1];
    const Eigen::VectorXd lam_l = s.left_schmidt(k);
    const Eigen::VectorXd lam_r = s.right_schmidt(k + 1);
    const Eigen::VectorXd &lam = s.schmidts[k];
    const int chi_l = static_cast<int>(lam_l.size());
    const int chi = static_cast<int>(lam.size());
    const int chi_r = static_cast<int>(lam_r.size());
    const int merged = chi * r;

    // Gamma~[k]_{n'}(a, b*r + g) = sum_n left(n*d + n', g) Gamma[k]_n(a, b), weighted by lambda[k-1].
    ComplexMatrix lhs = ComplexMatrix::Zero(d * chi_l, merged);
    ComplexMatrix rhs_t = ComplexMatrix::Zero(d * chi_r, merged);
    for (int out = 0; out < d; ++out) {
        for (int in = 0; in < d; ++in) {
            const ComplexMatrix &gl = left_site[in];
            const ComplexMatrix &gr = right_site[in];
            for (int g = 0; g < r; ++g) {
                const Complex xl = mpo.left(in * d + out, g);
                const Complex xr = mpo.right(in * d + out, g);
                for (int b = 0; b < chi; ++b) {
                    if (xl != 0.0) {
                        lhs.block(out * chi_l, b * r + g, chi_l, 1) += xl * gl.col(b);
                    }
                    if (xr != 0.0) {
                        rhs_t.block(out * chi_r, b * r + g, chi_r, 1) += xr * gr.row(b).transpose();
                    }
                }
            }
        }
    }
    Eigen::VectorXd merged_lambda(merged);
    for (int b = 0; b < chi; ++b) {
        for (int g = 0; g < r; ++g) {
            merged_lambda[b * r + g] = lam[b] * mpo.sigmas[g];
        }
    }
    for (int out = 0; out < d; ++out) {
        lhs.middleRows(out * chi_l, chi_l) = lam_l.cast<Complex>().asDiagonal() * lhs.middleRows(out * chi_l, chi_l);
        rhs_t.middleRows(out * chi_r, chi_r) =
            lam_r.cast<Complex>().asDiagonal() * rhs_t.middleRows(out * chi_r, chi_r);
    }

    // Two-site matrix = lhs diag(merged_lambda) rhs_t^T; re-orthogonalize through the small core.
    ComplexMatrix q_l, r_l, q_r, r_r;
    thin_qr(lhs, q_l, r_l);
    thin_qr(rhs_t, q_r, r_r);
    const ComplexMatrix core = r_l * merged_lambda.cast<Complex>().asDiagonal() * r_r.transpose();
    Eigen::JacobiSVD<ComplexMatrix> svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const int keep = kept_rank(svd.singularValues());
    if (keep > max_bond) {
        throw CapacityError("apply_coupler: bond dimension " + std::to_string(keep) + " exceeds ceiling " +
                            std::to_string(max_bond));
    }
    const ComplexMatrix new_left = q_l * svd.matrixU().leftCols(keep);
    const ComplexMatrix new_right_t = q_r * svd.matrixV().leftCols(keep).conjugate();

    for (int out = 0; out < d; ++out) {
        ComplexMatrix gl = new_left.middleRows(out * chi_l, chi_l);
        ComplexMatrix gr_t = new_right_t.middleRows(out * chi_r, chi_r);
        for (int a = 0; a < chi_l; ++a) {
            gl.row(a) /= lam_l[a];
        }
        for (int c = 0; c < chi_r; ++c) {
            gr_t.row(c) /= lam_r[c];
        }
        left_site[out] = std::move(gl);
        right_site[out] = gr_t.transpose();
    }
    s.schmidts[k] = svd.singularValues().head(keep);
    return CouplerUpdate{chi, merged, keep};
}

double norm_squared(const MPSState &s) {
    ComplexMatrix env = ComplexMatrix::Ones(1, 1);
    for (int i = 0; i < s.modes(); ++i) {
        const Eigen::VectorXd lam = s.right_schmidt(i);
        ComplexMatrix next = ComplexMatrix::Zero(lam.size(), lam.size());
        for (int n = 0; n <= s.cutoff; ++n) {
            const ComplexMatrix a = s.gammas[i][n] * lam.cast<Complex>().asDiagonal();
            next += a.adjoint() * env * a;
        }
        env = std::move(next);
    }
    return env(0, 0).real();
}

std::vector<double> mode_occupations(const MPSState &s) {
    std::vector<double> occ(s.modes(), 0.0);
    for (int i = 0; i < s.modes(); ++i) {
        const Eigen::VectorXd l2 = s.left_schmidt(i).array().square();
        const Eigen::VectorXd r2 = s.right_schmidt(i).array().square();
        for (int n = 1; n <= s.cutoff; ++n) {
            const Eigen::MatrixXd w = s.gammas[i][n].cwiseAbs2();
            occ[i] += n * (l2.transpose() * w * r2)(0, 0);
        }
    }
    return occ;
}

double outcome_probability(const MPSState &s, const FockSample &nbar) {
    if (static_cast<int>(nbar.counts.size()) != s.modes()) {
        throw InputError("outcome_probability: outcome length does not match mode count");
    }
    Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
    for (int i = 0; i < s.modes(); ++i) {
        const int n = nbar.counts[i];
        if (n < 0 || n > s.cutoff) {
            throw InputError("outcome_probability: count outside [0, cutoff]");
        }
        v = (v * s.gammas[i][n]).cwiseProduct(s.right_schmidt(i).cast<Complex>().transpose());
    }
    return std::norm(v(0));
}

std::optional<FockSample> sample(const MPSState &s, RandomStream &rng) {
    FockSample out;
    out.counts.resize(s.modes());
    Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
    std::vector<Eigen::RowVectorXcd> branch(s.local_dim());
    std::vector<double> weight(s.local_dim());
    double prefix = 1.0;
    for (int i = 0; i < s.modes(); ++i) {
        const Eigen::RowVectorXcd lam = s.right_schmidt(i).cast<Complex>().transpose();
        double total = 0.0;
        for (int n = 0; n <= s.cutoff; ++n) {
            branch[n] = (v * s.gammas[i][n]).cwiseProduct(lam);
            weight[n] = branch[n].squaredNorm();
            total += weight[n];
        }
        if (!(total * prefix >= 1e-300)) {
            return std::nullopt;
        }
        double u = rng.uniform() * total;
        int pick = s.cutoff;
        for (int n = 0; n <= s.cutoff; ++n) {
            if (u < weight[n]) {
                pick = n;
                break;
            }
            u -= weight[n];
        }
        while (weight[pick] == 0.0 && pick > 0) {
            --pick;
        }
        out.counts[i] = pick;
        prefix *= weight[pick] / total;
        v = branch[pick] / std::sqrt(weight[pick]);
    }
    return out;
}

double canonicalize(MPSState &s) {
    const int m = s.modes();
    const int d = s.local_dim();
    // tensors[i][n] = Gamma[i]_n lambda[i]
    std::vector<std::vector<ComplexMatrix>> t(m);
    for (int i = 0; i < m; ++i) {
        const ComplexVector lam = s.right_schmidt(i).cast<Complex>();
        for (int n = 0; n < d; ++n) {
            t[i].push_back(s.gammas[i][n] * lam.asDiagonal());
        }
    }
    // Right-to-left: make sites 1..M-1 right-orthonormal.
    for (int i = m - 1; i > 0; --i) {
        const Eigen::Index chi_l = t[i][0].rows();
        const Eigen::Index chi_r = t[i][0].cols();
        ComplexMatrix wide(chi_l, d * chi_r);
        for (int n = 0; n < d; ++n) {
            wide.middleCols(n * chi_r, chi_r) = t[i][n];
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(wide, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const int keep = std::max(1, kept_rank(svd.singularValues()));
        const ComplexMatrix vh = svd.matrixV().leftCols(keep).adjoint();
        const ComplexMatrix us = svd.matrixU().leftCols(keep) *
                                 svd.singularValues().head(keep).cast<Complex>().asDiagonal();
        for (int n = 0; n < d; ++n) {
            t[i][n] = vh.middleCols(n * chi_r, chi_r);
            t[i - 1][n] = t[i - 1][n] * us;
        }
    }
    double norm = 0.0;
    for (int n = 0; n < d; ++n) {
        norm += t[0][n].squaredNorm();
    }
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) {
        throw ModelError("canonicalize: state has zero norm");
    }
    // Left-to-right: Schmidt values and Gammas.
    ComplexMatrix carry = ComplexMatrix::Constant(1, 1, Complex(1.0 / norm, 0.0));
    Eigen::VectorXd lam_prev = Eigen::VectorXd::Ones(1);
    for (int i = 0; i < m; ++i) {
        const Eigen::Index chi_l = carry.rows();
        const Eigen::Index chi_r = t[i][0].cols();
        ComplexMatrix tall(d * chi_l, chi_r);
        for (int n = 0; n < d; ++n) {
            tall.middleRows(n * chi_l, chi_l) = carry * t[i][n];
        }
        if (i == m - 1) {
            for (int n = 0; n < d; ++n) {
                ComplexMatrix g = tall.middleRows(n * chi_l, chi_l);
                for (Eigen::Index a = 0; a < chi_l; ++a) {
                    g.row(a) /= lam_prev[a];
                }
                s.gammas[i][n] = std::move(g);
            }
            break;
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(tall, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const int keep = std::max(1, kept_rank(svd.singularValues()));
        const ComplexMatrix u = svd.matrixU().leftCols(keep);
        for (int n = 0; n < d; ++n) {
            ComplexMatrix g = u.middleRows(n * chi_l, chi_l);
            for (Eigen::Index a = 0; a < chi_l; ++a) {
                g.row(a) /= lam_prev[a];
            }
            s.gammas[i][n] = std::move(g);
        }
        lam_prev = svd.singularValues().head(keep);
        s.schmidts[i] = lam_prev;
        carry = lam_prev.cast<Complex>().asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    }
    return norm;
}

}  // namespace lossybs
