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

#include "vcav/fidelity.hpp"
#include "vcav/scatter1.hpp"

namespace vcav {
namespace {

TEST(Transfer, IsUnimodular) {
    for (const SystemParams p : {SystemParams(1.0, 0.1), SystemParams(1.0, 2.0), SystemParams(1.0, 30.0, 0.2)}) {
        for (double w = -5.0; w <= 5.0; w += 0.37) EXPECT_NEAR(std::abs(transfer_amplitude(w, p)), 1.0, 1e-14);
    }
}

TEST(Transfer, FactorsIntoInteriorMapAndOutcoupling) {
    const SystemParams p(1.0, 0.7, 0.1);
    for (double w : {-1.0, 0.0, 0.6}) {
        EXPECT_LT(std::abs(interior_map(w, p) * outcoupling_factor(w, p) - transfer_amplitude(w, p)), 1e-14);
    }
}

TEST(Transfer, RationalFormMatchesPointValues) {
    const SystemParams p(1.0, 3.0, -0.2);
    const Rational t = transfer_rational(p);
    for (double w : {-2.0, 0.1, 1.5}) EXPECT_LT(std::abs(t(w) - transfer_amplitude(w, p)), 1e-13);
}

TEST(Transfer, EmptyCavityLimitReflectsOffTheMirror) {
    const SystemParams p(1e-9, 1.0);
    for (double w : {-1.0, 0.5}) {
        const cplx mirror = -cplx(w, -1.0) / cplx(w, 1.0);
        EXPECT_LT(std::abs(transfer_amplitude(w, p) - mirror), 1e-8);
    }
}

TEST(Apply, PreservesNorm) {
    const SystemParams p(1.0, 0.5, 0.05);
    for (double sigma : {0.01, 0.2, 3.0}) EXPECT_NEAR(apply(lorentzian(0.9, sigma), p).norm(), 1.0, 1e-12);
}

TEST(Apply, TwiceMultipliesByTSquared) {
    const SystemParams p(1.0, 4.0);
    const OnePhotonPulse a = lorentzian(0.1, 0.2);
    const OnePhotonPulse twice = apply(apply(a, p), p);
    for (double w : {-0.3, 0.1, 0.8}) {
        const cplx t = transfer_amplitude(w, p);
        EXPECT_LT(std::abs(twice(w) - t * t * a(w)), 1e-13);
    }
}

TEST(Apply, FullExcitationPulseMapsToMinusItsTimeReverse) {
    const SystemParams p(1.0, 0.9, 0.3);
    const OnePhotonPulse s = full_excitation_pulse(p);
    const OnePhotonPulse out = apply(s, p);
    const OnePhotonPulse tr = time_reverse(s);
    for (double w : {-2.0, -0.4, 0.0, 1.1}) EXPECT_LT(std::abs(out(w) + tr(w)), 1e-12);
}

TEST(ClosedForm, MatchesResidueOverlap) {
    for (const SystemParams p : {SystemParams(1.0, 0.2), SystemParams(1.0, 2.0), SystemParams(1.0, 25.0, 0.01)}) {
        for (double sigma : {0.03, 0.4}) {
            const OnePhotonPulse a = lorentzian(0.15, sigma);
            const cplx direct = overlap1(a, apply(a, p)).amplitude;
            EXPECT_LT(std::abs(lorentzian_overlap_closed_form(0.15, sigma, p).amplitude - direct), 1e-12);
        }
    }
}

TEST(ClosedForm, NarrowPulseTendsToT) {
    const SystemParams p(1.0, 20.0);
    const double w0 = 0.02;
    EXPECT_LT(std::abs(lorentzian_overlap_closed_form(w0, 1e-7, p).amplitude - transfer_amplitude(w0, p)), 1e-4);
}

}  // namespace
}  // namespace vcav
