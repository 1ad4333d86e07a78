// Copyright 2026 The vcav Authors
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

#include <gtest/gtest.h>

#include "vcav/oracle.hpp"
#include "vcav/scatter1.hpp"
#include "vcav/scatter2.hpp"

namespace vcav {
namespace {

OracleSizing small(int count) {
    OracleSizing s;
    s.count = count;
    return s;
}

TEST(Oracle, MatchesTransferFunction) {
    const SystemParams p(1.0, 2.0);
    const OnePhotonPulse a = lorentzian(0.1, 0.3);
    const OracleConfig cfg = auto_config(a, p, small(801));
    const OracleRun1 run = simulate_single(a, p, cfg);
    const OnePhotonPulse ref = apply(a, p);
    EXPECT_LT(grid_distance(cfg.grid, run.output, [&](double w) { return ref(w); }), 1e-3);
    EXPECT_LT(run.max_drift, 1e-8);
    EXPECT_LT(run.pre_tail, cfg.pre_tail_tol);
    EXPECT_FALSE(run.trajectory.empty());
}

TEST(Oracle, IsDeterministic) {
    const SystemParams p(1.0, 0.5);
    const OnePhotonPulse s = full_excitation_pulse(p);
    const OracleConfig cfg = auto_config(s, p, small(401));
    const OracleRun1 a = simulate_single(s, p, cfg);
    const OracleRun1 b = simulate_single(s, p, cfg);
    ASSERT_EQ(a.output.size(), b.output.size());
    for (size_t i = 0; i < a.output.size(); ++i) EXPECT_EQ(a.output[i], b.output[i]);
    EXPECT_EQ(a.max_excited, b.max_excited);
}

TEST(Oracle, EmptyCavityLimitIsAMirror) {
    const SystemParams p(1e-7, 1.0);
    const OnePhotonPulse a = lorentzian(0.2, 0.4);
    // Sized for g = 1; the tiny-g sizing would chase the atomic timescale.
    const OracleConfig cfg = auto_config(a, SystemParams(1.0, 1.0), small(801));
    const OracleRun1 run = simulate_single(a, p, cfg);
    const double d = grid_distance(cfg.grid, run.output, [&](double w) { return -cplx(w, -1.0) / cplx(w, 1.0) * a(w); });
    EXPECT_LT(d, 1e-3);
    EXPECT_LT(run.max_excited, 1e-10);
}

TEST(Oracle, FullExcitationInvertsTheAtom) {
    const SystemParams p(1.0, 0.335);
    const OnePhotonPulse s = full_excitation_pulse(p);
    const OracleRun1 run = simulate_single(s, p, auto_config(s, p, small(1001)));
    EXPECT_GT(run.max_excited, 0.99);
}

TEST(Oracle, LorentzianNeverFullyInverts) {
    const SystemParams p(1.0, 20.0);
    const OnePhotonPulse a = lorentzian(0.0, 0.5483 * p.gamma());
    const OracleRun1 run = simulate_single(a, p, auto_config(a, p, small(1001)));
    EXPECT_LT(run.max_excited, 1.0 - 1e-3);
    EXPECT_GT(run.max_excited, 0.1);
}

TEST(Oracle, RejectsWindowsShorterThanTheRun) {
    const SystemParams p(1.0, 2.0);
    const OnePhotonPulse a = lorentzian(0.0, 0.3);
    OracleConfig cfg = auto_config(a, p, small(401));
    cfg.t_final = 4.0 * kPi / cfg.grid.spacing();
    EXPECT_THROW(simulate_single(a, p, cfg), Error);
}

TEST(Oracle, RejectsCoarseSteps) {
    const SystemParams p(1.0, 2.0);
    const OnePhotonPulse a = lorentzian(0.0, 0.3);
    OracleConfig cfg = auto_config(a, p, small(401));
    cfg.dt *= 10.0;
    EXPECT_THROW(simulate_single(a, p, cfg), Error);
}

TEST(Oracle, StepRefinementConvergesAtHighOrder) {
    const SystemParams p(1.0, 2.0);
    const OnePhotonPulse s = full_excitation_pulse(p);
    OracleConfig cfg = auto_config(s, p, small(401));
    cfg.dt *= 4.0;
    const ConvergenceReport r = dt_convergence(s, p, cfg);
    ASSERT_EQ(r.distances.size(), 2u);
    EXPECT_GT(r.observed_order, 3.5);
}

TEST(Oracle, TwoPhotonRunIsSymmetricAndClose) {
    const SystemParams p(1.0, 20.0);
    const OnePhotonPulse a = lorentzian(0.0, 0.8 * p.gamma());
    const TwoPhotonSpectrum in = product_state(a, a);
    OracleSizing s = two_photon_sizing(p);
    s.count = 201;
    const OracleConfig cfg = auto_config(in, p, s);
    const OracleRun2 run = simulate_two(in, p, cfg);
    const int n = cfg.grid.count();
    for (int i = 0; i < n; i += 17) {
        for (int j = 0; j < n; j += 13) {
            EXPECT_LT(std::abs(run.output[i * n + j] - run.output[j * n + i]), 1e-12);
        }
    }
    const TwoPhotonOutput ref = exact(in, p);
    EXPECT_LT(grid_distance(cfg.grid, run.output, [&](double x, double y) { return ref(x, y); }), 5e-2);
    EXPECT_LT(run.max_drift, 1e-6);
}

TEST(Oracle, TwoPhotonNeedsProductInput) {
    const SystemParams p(1.0, 20.0);
    const TwoPhotonSpectrum k = koshino_pulse(0.5 / p.gamma(), 50.0 / p.gamma());
    OracleConfig cfg;
    cfg.grid = FrequencyGrid(0.0, 2.0, 201);
    cfg.dt = 0.01;
    cfg.t_final = 10.0;
    EXPECT_THROW(simulate_two(k, p, cfg), Error);
}

}  // namespace
}  // namespace vcav
