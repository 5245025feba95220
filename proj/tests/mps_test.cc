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

#include <cmath>
#include <map>
#include <numeric>

#include <gtest/gtest.h>

#include "lossybs/errors.h"
#include "lossybs/mps/fock_amplitudes.h"
#include "lossybs/mps/mps_state.h"
#include "lossybs/mps/simulate.h"
#include "lossybs/oracle/oracle.h"

using namespace lossybs;

namespace {

const double kPi = std::acos(-1.0);

Distribution mps_distribution(const MPSState &s, int photons) {
    Distribution d;
    for (const auto &o : compositions(photons, s.modes())) d.add(o, outcome_probability(s, o));
    return d;
}

void expect_canonical(const MPSState &s) {
    for (const auto &lam : s.schmidts) {
        EXPECT_NEAR(lam.squaredNorm(), 1.0, 1e-10);
        for (int i = 1; i < lam.size(); ++i) EXPECT_GE(lam[i - 1], lam[i]);
    }
    // Left-orthonormality of lambda[i-1] Gamma[i].
    for (int i = 0; i < s.modes(); ++i) {
        const Eigen::VectorXd l = s.left_schmidt(i);
        ComplexMatrix g = ComplexMatrix::Zero(s.gammas[i][0].cols(), s.gammas[i][0].cols());
        for (int n = 0; n <= s.cutoff; ++n) {
            const ComplexMatrix a = l.cast<Complex>().asDiagonal() * s.gammas[i][n];
            g += a.adjoint() * a;
        }
        EXPECT_LT(max_abs(g - ComplexMatrix::Identity(g.rows(), g.cols())), 1e-10) << i;
    }
}

}  // namespace

TEST(FockAmplitudes, IdentityBlock) {
    const FockTensor4 t = coupler_fock_amplitudes(Eigen::Matrix2cd::Identity(), 3);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                for (int d = 0; d <= 3; ++d)
                    EXPECT_NEAR(std::abs(t(a, b, c, d) - Complex((a == c && b == d) ? 1.0 : 0.0)), 0.0, 1e-15);
}

TEST(FockAmplitudes, HongOuMandel) {
    const FockTensor4 t = coupler_fock_amplitudes(beamsplitter_block(kPi / 4, 0.0), 2);
    EXPECT_LT(std::abs(t(1, 1, 1, 1)), 1e-15);
    EXPECT_NEAR(std::abs(t(2, 0, 1, 1)), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(t(0, 2, 1, 1)), 1 / std::sqrt(2.0), 1e-15);
}

TEST(FockAmplitudes, SectorUnitarityAndConservation) {
    RandomStream rng(1);
    const int d = 3;
    const Eigen::Matrix2cd u = haar_unitary(2, rng);
    const FockTensor4 t = coupler_fock_amplitudes(u, d);
    for (int total = 0; total <= d; ++total) {
        const int k = total + 1;
        ComplexMatrix sector(k, k);
        for (int o = 0; o < k; ++o)
            for (int i = 0; i < k; ++i) sector(o, i) = t(o, total - o, i, total - i);
        EXPECT_LT(unitarity_error(sector), 1e-12) << total;
    }
    for (int a = 0; a <= d; ++a)
        for (int b = 0; b <= d; ++b)
            for (int c = 0; c <= d; ++c)
                for (int e = 0; e <= d; ++e)
                    if (a + b != c + e) {
                        EXPECT_EQ(t(a, b, c, e), Complex(0.0));
                    }
}

TEST(FockAmplitudes, SinglePhotonIsMatrixColumn) {
    RandomStream rng(2);
    const Eigen::Matrix2cd u = haar_unitary(2, rng);
    const FockTensor4 t = coupler_fock_amplitudes(u, 1);
    EXPECT_LT(std::abs(t(1, 0, 1, 0) - u(0, 0)), 1e-15);
    EXPECT_LT(std::abs(t(0, 1, 1, 0) - u(1, 0)), 1e-15);
    EXPECT_LT(std::abs(t(1, 0, 0, 1) - u(0, 1)), 1e-15);
    EXPECT_LT(std::abs(t(0, 1, 0, 1) - u(1, 1)), 1e-15);
}

TEST(FockAmplitudes, LargeCutoffStaysFinite) {
    const FockTensor4 t = coupler_fock_amplitudes(beamsplitter_block(0.4, 0.3), 30);
    for (int o = 0; o <= 30; ++o) EXPECT_TRUE(std::isfinite(std::abs(t(o, 30 - o, 15, 15))));
    EXPECT_THROW(coupler_fock_amplitudes(Eigen::Matrix2cd::Identity(), 31), InputError);
    EXPECT_THROW(coupler_fock_amplitudes(2.0 * Eigen::Matrix2cd::Identity(), 2), InputError);
}

TEST(CouplerMPO, RecombinesAndRankBound) {
    RandomStream rng(3);
    for (int d = 1; d <= 4; ++d) {
        const Eigen::Matrix2cd u = haar_unitary(2, rng);
        const CouplerMPO mpo = make_coupler_mpo(u, d);
        EXPECT_LE(mpo.rank(), (d + 1) * (d + 1));
        const FockTensor4 want = coupler_fock_amplitudes(u, d);
        const FockTensor4 got = mpo.recombine();
        for (int a = 0; a <= d; ++a)
            for (int b = 0; b <= d; ++b)
                for (int c = 0; c <= d; ++c)
                    for (int e = 0; e <= d; ++e) EXPECT_LT(std::abs(got(a, b, c, e) - want(a, b, c, e)), 1e-12);
    }
}

TEST(MPS, InitInput) {
    const std::vector<int> p{1, 0, 0, 0};
    MPSState s = init_input(p, 1);
    EXPECT_NEAR(norm_squared(s), 1.0, 1e-15);
    EXPECT_EQ(outcome_probability(s, FockSample{{1, 0, 0, 0}}), 1.0);
    EXPECT_EQ(s.max_bond(), 1);
    const std::vector<int> vac{0, 0, 0};
    EXPECT_EQ(outcome_probability(init_input(vac, 1), FockSample{{0, 0, 0}}), 1.0);
    const std::vector<int> two{1, 1};
    EXPECT_EQ(outcome_probability(init_input(two, 2), FockSample{{1, 1}}), 1.0);
    EXPECT_THROW(init_input(two, 0), InputError);
    const std::vector<int> bad{2, 0};
    EXPECT_THROW(init_input(bad, 2), InputError);
    EXPECT_THROW(outcome_probability(s, FockSample{{2, 0, 0, 0}}), InputError);
}

TEST(MPS, PhaseLeavesDistribution) {
    RandomStream rng(4);
    const LayeredCircuit c = random_brickwork(4, 2, 1.0, rng);
    const std::vector<int> p{1, 0, 1, 0};
    MPSState s = simulate_circuit(c, p).state;
    const Distribution before = mps_distribution(s, 2);
    const auto schmidt = s.schmidts;
    apply_phase(s, 1, 0.83);
    apply_phase(s, 2, kPi);
    EXPECT_LT(total_variation(before, mps_distribution(s, 2)), 1e-14);
    for (std::size_t b = 0; b < schmidt.size(); ++b) EXPECT_EQ(s.schmidts[b], schmidt[b]);
    MPSState vac = init_input(std::vector<int>{0, 0}, 1);
    apply_phase(vac, 0, kPi);
    EXPECT_NEAR(std::abs(vac.gammas[0][0](0, 0) - Complex(1.0)), 0.0, 1e-15);
}

TEST(MPS, SinglePhotonSplitting) {
    MPSState s = init_input(std::vector<int>{1, 0}, 1);
    const CouplerUpdate u = apply_coupler(s, 0, make_coupler_mpo(beamsplitter_block(kPi / 4, 0.0), 1));
    EXPECT_EQ(u.bond_before, 1);
    ASSERT_EQ(s.schmidts[0].size(), 2);
    EXPECT_NEAR(s.schmidts[0][0], 1 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(s.schmidts[0][1], 1 / std::sqrt(2.0), 1e-14);
}

TEST(MPS, IdentityCouplerKeepsState) {
    MPSState s = init_input(std::vector<int>{1, 1, 0}, 2);
    apply_coupler(s, 1, make_coupler_mpo(Eigen::Matrix2cd::Identity(), 2));
    EXPECT_NEAR(outcome_probability(s, FockSample{{1, 1, 0}}), 1.0, 1e-14);
    EXPECT_EQ(s.max_bond(), 1);
}

TEST(MPS, RoundTripReturnsToProductState) {
    RandomStream rng(5);
    const Eigen::Matrix2cd u = haar_unitary(2, rng);
    MPSState s = init_input(std::vector<int>{1, 1, 0}, 2);
    apply_coupler(s, 0, make_coupler_mpo(u, 2));
    EXPECT_GT(s.bond_dim(0), 1);
    apply_coupler(s, 0, make_coupler_mpo(u.adjoint(), 2));
    EXPECT_EQ(s.bond_dim(0), 1);
    EXPECT_NEAR(outcome_probability(s, FockSample{{1, 1, 0}}), 1.0, 1e-12);
}

TEST(MPS, CutoffMismatchAndRange) {
    MPSState s = init_input(std::vector<int>{1, 0}, 1);
    EXPECT_THROW(apply_coupler(s, 0, make_coupler_mpo(Eigen::Matrix2cd::Identity(), 2)), InputError);
    EXPECT_THROW(apply_coupler(s, 1, make_coupler_mpo(Eigen::Matrix2cd::Identity(), 1)), InputError);
}

TEST(MPS, NormAndPhotonNumberPreservedPerLayer) {
    RandomStream rng(6);
    const LayeredCircuit c = random_brickwork(6, 4, 1.0, rng);
    const std::vector<int> p{1, 0, 1, 1, 0, 0};
    MPSState s = init_input(p, 3);
    for (const auto &layer : c.layers) {
        for (const auto &g : layer.couplers) apply_coupler(s, g.mode, make_coupler_mpo(g.block(), 3));
        for (int i = 0; i < c.modes; ++i) apply_phase(s, i, layer.phases[i]);
        EXPECT_NEAR(norm_squared(s), 1.0, 1e-10);
        const auto occ = mode_occupations(s);
        EXPECT_NEAR(std::accumulate(occ.begin(), occ.end(), 0.0), 3.0, 1e-10);
    }
}

TEST(Simulate, DepthZeroIsInitialState) {
    LayeredCircuit c{3, {}};
    const std::vector<int> p{0, 1, 0};
    const SimulationResult r = simulate_circuit(c, p);
    EXPECT_EQ(outcome_probability(r.state, FockSample{{0, 1, 0}}), 1.0);
    EXPECT_EQ(r.peak_bond, 1);
}

TEST(Simulate, SinglePhotonIsColumn) {
    RandomStream rng(7);
    const LayeredCircuit c = random_brickwork(5, 4, 1.0, rng);
    const ComplexMatrix u = transfer_matrix(c);
    const std::vector<int> p{0, 0, 1, 0, 0};
    const SimulationResult r = simulate_circuit(c, p);
    Distribution want;
    for (int i = 0; i < 5; ++i) {
        std::vector<int> o(5, 0);
        o[i] = 1;
        want.add(FockSample{o}, std::norm(u(i, 2)));
    }
    EXPECT_LT(total_variation(mps_distribution(r.state, 1), want), 1e-12);
}

TEST(Simulate, MatchesOracleAndStaysCanonical) {
    RandomStream rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 3 + trial % 4;
        const int depth = 1 + trial % 4;
        const int n = 1 + trial % 3;
        const LayeredCircuit c = random_brickwork(m, depth, 1.0, rng);
        std::vector<int> p(m, 0);
        for (int i = 0; i < n; ++i) p[m - 1 - i] = 1;
        const SimulationResult r = simulate_circuit(c, p);
        const Distribution ref = fock_output_distribution(transfer_matrix(c), p);
        for (const auto &[o, w] : ref) EXPECT_NEAR(outcome_probability(r.state, o), w, 1e-10);
        EXPECT_TRUE(r.growth_bound_ok);
        EXPECT_TRUE(r.depth_bound_ok);
        expect_canonical(r.state);
    }
}

TEST(Simulate, ParallelLayersMatchSerial) {
    RandomStream rng(9);
    const LayeredCircuit c = random_brickwork(8, 3, 1.0, rng);
    const std::vector<int> p{1, 0, 1, 0, 1, 0, 0, 0};
    SimulationOptions a, b;
    a.parallel_layers = true;
    b.parallel_layers = false;
    const auto ra = simulate_circuit(c, p, a), rb = simulate_circuit(c, p, b);
    for (const auto &o : compositions(3, 8)) EXPECT_EQ(outcome_probability(ra.state, o), outcome_probability(rb.state, o));
}

TEST(Simulate, CapacityAndLossErrors) {
    RandomStream rng(10);
    const LayeredCircuit c = random_brickwork(6, 4, 1.0, rng);
    const std::vector<int> p{1, 1, 1, 0, 0, 0};
    SimulationOptions tight;
    tight.max_bond = 2;
    try {
        simulate_circuit(c, p, tight);
        FAIL();
    } catch (const CapacityError &e) {
        EXPECT_NE(std::string(e.what()).find("ceiling 2"), std::string::npos);
    }
    const LayeredCircuit lossy = random_brickwork(6, 2, 0.9, rng);
    EXPECT_THROW(simulate_circuit(lossy, p), ModelError);
    EXPECT_THROW(simulate_circuit(c, std::vector<int>{1, 0}), InputError);
}

TEST(Sample, ProductStateIsDeterministic) {
    const std::vector<int> p{0, 1, 1, 0};
    const MPSState s = init_input(p, 2);
    RandomStream rng(11);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(sample(s, rng)->counts, p);
}

TEST(Sample, SinglePhotonAndHom) {
    LayeredCircuit c{2, {Layer{{}, {CouplerGate{0, kPi / 4, 0.0, 1.0}}, 1.0}}};
    const int n = 100000;
    RandomStream rng(12);
    const MPSState one = simulate_circuit(c, std::vector<int>{1, 0}).state;
    int left = 0;
    for (int i = 0; i < n; ++i) left += sample(one, rng)->counts[0];
    EXPECT_NEAR(left / double(n), 0.5, 3.0 * std::sqrt(0.25 / n));
    const MPSState hom = simulate_circuit(c, std::vector<int>{1, 1}).state;
    int twozero = 0, coincidences = 0;
    for (int i = 0; i < n; ++i) {
        const auto s = *sample(hom, rng);
        twozero += s.counts[0] == 2;
        coincidences += s.counts[0] == 1;
    }
    EXPECT_EQ(coincidences, 0);
    EXPECT_NEAR(twozero / double(n), 0.5, 3.0 * std::sqrt(0.25 / n));
}

TEST(Sample, ChiSquareGoodnessOfFit) {
    RandomStream rng(13);
    const LayeredCircuit c = random_brickwork(4, 3, 1.0, rng);
    const std::vector<int> p{1, 0, 1, 0};
    const MPSState s = simulate_circuit(c, p).state;
    const Distribution exact = mps_distribution(s, 2);
    const int n = 100000;
    std::map<FockSample, int> counts;
    for (int i = 0; i < n; ++i) ++counts[*sample(s, rng)];
    double stat = 0.0;
    int bins = 0;
    for (const auto &[o, w] : exact) {
        const double e = n * w;
        if (e < 5.0) continue;
        stat += (counts[o] - e) * (counts[o] - e) / e;
        ++bins;
    }
    // 1% critical values of chi^2 for dof <= 9 stay below 21.7.
    EXPECT_LE(bins, 10);
    EXPECT_LT(stat, 21.7);
}

TEST(LossyInput, Thinning) {
    RandomStream rng(14);
    EXPECT_EQ(lossy_input_sample(5, 1.0, rng), std::vector<int>(5, 1));
    EXPECT_EQ(lossy_input_sample(5, 0.0, rng), std::vector<int>(5, 0));
    const int draws = 100000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto k = lossy_input_sample(10, 0.3, rng);
        sum += std::accumulate(k.begin(), k.end(), 0);
    }
    EXPECT_NEAR(sum / draws, 3.0, 3.0 * std::sqrt(10 * 0.3 * 0.7 / draws));
    EXPECT_THROW(lossy_input_sample(3, 1.5, rng), InputError);
}

TEST(MpsSampler, BatchDeterminismAndSerialEquivalence) {
    RandomStream rng(15);
    const LayeredCircuit c = random_brickwork(4, 2, 1.0, rng);
    const MpsSampler s(c, {0, 1}, 0.6);
    const RandomStream root(16);
    EXPECT_EQ(s.sample_batch(500, root, 1), s.sample_batch_serial(500, root));
    EXPECT_EQ(s.sample_batch(500, root, 4), s.sample_batch(500, root, 4));
    EXPECT_THROW(MpsSampler(random_brickwork(4, 2, 0.9, rng), {0}, 1.0), ModelError);
}
