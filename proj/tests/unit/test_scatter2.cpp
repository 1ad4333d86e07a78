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
#include "vcav/optimizer.hpp"
#include "vcav/scatter1.hpp"
#include "vcav/scatter2.hpp"

namespace vcav {
namespace {

TEST(Exact, RejectsAsymmetricInput) {
    const TwoPhotonSpectrum x = product_state(lorentzian(0.0, 0.1), lorentzian(0.3, 0.1));
    EXPECT_THROW(exact(x, SystemParams(1.0, 1.0)), Error);
}

TEST(Exact, OutputIsExchangeSymmetric) {
    const SystemParams p(1.0, 0.6, 0.05);
    const OnePhotonPulse a = lorentzian(0.8, 0.2);
    const TwoPhotonOutput out = exact(product_state(a, a), p);
    for (double x : {-0.5, 0.7, 1.2}) {
        for (double y : {0.1, 0.9}) EXPECT_LT(std::abs(out(x, y) - out(y, x)), 1e-13);
    }
}

TEST(Exact, WeakCouplingIsLinear) {
    const SystemParams p(1e-4, 1.0);
    const OnePhotonPulse a = lorentzian(0.1, 0.3);
    const TwoPhotonOutput out = exact(product_state(a, a), p);
    for (double x : {-0.4, 0.1, 0.5}) {
        const double y = 0.2;
        const cplx linear = transfer_amplitude(x, p) * transfer_amplitude(y, p) * a(x) * a(y);
        EXPECT_LT(std::abs(out(x, y) - linear), 1e-6 * std::abs(linear));
    }
}

TEST(Exact, SampledPathAgreesWithClosedForm) {
    const SystemParams p(1.0, 5.0);
    const OnePhotonPulse a = lorentzian(0.0, 0.15);
    const TwoPhotonSpectrum x = product_state(a, a);
    ExactOptions opt;
    opt.force_grid = true;
    opt.grid_count = 4001;
    const TwoPhotonOutput closed = exact(x, p);
    const TwoPhotonOutput grid = exact(x, p, opt);
    double worst = 0.0, peak = 0.0;
    for (double u : {-0.2, 0.0, 0.1}) {
        for (double v : {-0.1, 0.05, 0.3}) {
            worst = std::max(worst, std::abs(closed(u, v) - grid(u, v)));
            peak = std::max(peak, std::abs(closed(u, v)));
        }
    }
    EXPECT_LT(worst, 2e-3 * peak);
}

TEST(Exact, CriticalCouplingIsRegularOnTheAntiDiagonal) {
    // kappa = 2g: the slice integrand has coincident double poles at wa + wb = 0.
    const SystemParams p(1.0, 2.0);
    const OnePhotonPulse s = full_excitation_pulse(p);
    const TwoPhotonOutput out = exact(product_state(s, s), p);
    const cplx on = out(-0.3, 0.3);
    for (double e : {1e-12, 1e-8, 1e-5}) EXPECT_LT(std::abs(out(-0.3 + e, 0.3) - on), 1e-9 + 10.0 * e) << e;
    EXPECT_NEAR(std::abs(on), std::abs(s(-0.3) * s(0.3)), 1e-10);
}

TEST(Exact, FullExcitationProductOnlyChangesPhase) {
    const SystemParams p(1.0, 1.3);
    const OnePhotonPulse s = full_excitation_pulse(p);
    const TwoPhotonSpectrum x = product_state(s, s);
    const TwoPhotonOutput out = exact(x, p);
    for (double u : {-1.0, 0.2}) {
        for (double v : {-0.6, 0.9}) EXPECT_NEAR(std::abs(out(u, v)), std::abs(x(u, v)), 1e-10);
    }
}

TEST(Exact, TimeShiftOnlyAddsAPhase) {
    const SystemParams p(1.0, 3.0);
    const OnePhotonPulse a = lorentzian(0.1, 0.3);
    const OnePhotonPulse b = time_shift(a, 7.0);
    const TwoPhotonOutput o1 = exact(product_state(a, a), p);
    const TwoPhotonOutput o2 = exact(product_state(b, b), p);
    const double u = 0.2, v = -0.1;
    EXPECT_LT(std::abs(o2(u, v) - std::polar(1.0, 7.0 * (u + v)) * o1(u, v)), 1e-12);
}

TEST(LimitIntegral, GridVersionMatchesRational) {
    const Rational f(1.0, {}, {cplx(0.2, 0.5), cplx(-0.1, -0.7)});
    const FrequencyGrid g(0.0, 400.0, 400001);
    std::vector<cplx> v(g.count());
    for (int i = 0; i < g.count(); ++i) v[i] = f(g.at(i));
    EXPECT_LT(std::abs(limit_integral(g, v, 0.13) - limit_integral(f, 0.13)), 1e-2);
}

TEST(BadCavity, ApproachesExactForLargeKappa) {
    const SystemParams p(1.0, 200.0);
    const OnePhotonPulse a = lorentzian(0.0, 0.5 * p.gamma());
    const TwoPhotonSpectrum x = product_state(a, a);
    const TwoPhotonOutput b = bad_cavity(x, p.gamma(), 0.0);
    const TwoPhotonOutput e = exact(x, p);
    const double g = p.gamma();
    for (double u : {-g, 0.0, 0.5 * g}) {
        for (double v : {-0.3 * g, 2.0 * g}) EXPECT_LT(std::abs(b(u, v) - e(u, v)), 1e-2 * std::abs(e(0.0, 0.0)));
    }
}

TEST(GoodCavity, ErrorIsFirstOrderInKappa) {
    double prev = 0.0;
    for (double kappa : {0.02, 0.01, 0.005}) {
        const SystemParams p(1.0, kappa);
        const double w0 = regime_resonance(Regime::Good, p);
        const OnePhotonPulse a = lorentzian(w0, 0.27 * kappa);
        const TwoPhotonSpectrum x = product_state(a, a);
        const TwoPhotonOutput g = good_cavity(x, p, 1);
        const TwoPhotonOutput e = exact(x, p);
        const double rel = std::abs(g(w0, w0) - e(w0, w0)) / std::abs(e(w0, w0));
        if (prev > 0.0) EXPECT_NEAR(prev / rel, 2.0, 0.4);
        prev = rel;
    }
}

TEST(GoodCavity, LowerBranchMirrorsUpper) {
    const SystemParams p(1.0, 0.01);
    const double w0 = regime_resonance(Regime::Good, p, -1);
    EXPECT_LT(w0, 0.0);
    const OnePhotonPulse lo = lorentzian(w0, 0.27 * p.kappa);
    const OnePhotonPulse hi = lorentzian(-w0, 0.27 * p.kappa);
    const TwoPhotonSpectrum x = product_state(lo, lo);
    const TwoPhotonOutput g_lo = good_cavity(x, p, -1);
    const TwoPhotonOutput g_hi = good_cavity(product_state(hi, hi), p, 1);
    for (double d : {0.0, 0.003, -0.005}) {
        const cplx a = g_lo(w0 + d, w0 - d);
        const cplx b = std::conj(g_hi(-w0 - d, -w0 + d));
        EXPECT_LT(std::abs(a - b), 1e-9 * std::abs(b));
    }
    EXPECT_THROW(good_cavity(x, SystemParams(1.0, 3.0), 1), Error);
    EXPECT_THROW(good_cavity(x, p, 0), Error);
}

TEST(Koshino, FixedPointIsHalfOverGamma) {
    EXPECT_DOUBLE_EQ(koshino_fixed_point(2.0), 0.25);
    EXPECT_LT(koshino_reduced_residual(1.0, 0.5, 10.0), 1e-12);
    EXPECT_GT(koshino_reduced_residual(1.0, -2.0, 10.0), 1.0);
    EXPECT_THROW(koshino_fixed_point(0.0), Error);
}

TEST(Koshino, ReducedSumMatchesFullAPlusBWhenSumTermsVanish) {
    const double gamma = 1.0, T1 = 0.5;
    for (double d : {-3.0, 0.4, 7.0}) {
        const auto [A, B] = koshino_AB(0.5 * d, -0.5 * d, gamma, T1);
        EXPECT_LT(std::abs(A + B - koshino_reduced_sum(d, gamma, T1)), 1e-12);
    }
}

}  // namespace
}  // namespace vcav
