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
#include "vcav/scatter2.hpp"

namespace vcav {
namespace {

TEST(Quadrature, GaussLegendreIntegratesPolynomialsExactly) {
    const QuadRule r = gauss_legendre(10);
    double s0 = 0.0, s18 = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        s0 += r.weights[i];
        s18 += r.weights[i] * std::pow(r.nodes[i], 18);
    }
    EXPECT_NEAR(s0, 2.0, 1e-14);
    EXPECT_NEAR(s18, 2.0 / 19.0, 1e-14);
}

TEST(Quadrature, TanRuleIntegratesALorentzian) {
    const QuadRule r = tan_gauss_legendre(40, 0.3, 0.2);
    double s = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        const double d = r.nodes[i] - 0.3;
        s += r.weights[i] * 0.2 / kPi / (d * d + 0.04);
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_THROW(tan_gauss_legendre(10, 0.0, 0.0), Error);
}

TEST(Quadrature, TwoDimensionalNormOfProducts) {
    const OnePhotonPulse a = lorentzian(0.2, 0.1), b = lorentzian(-0.5, 0.3);
    const TwoPhotonSpectrum ab = product_state(a, b);
    const Quadrature2D q = Quadrature2D::for_spectrum(ab, 80);
    EXPECT_NEAR(q.norm([&](double x, double y) { return ab(x, y); }), 1.0, 1e-4);
    const TwoPhotonSpectrum aa = product_state(a, a);
    EXPECT_NEAR(Quadrature2D::for_spectrum(aa, 80).norm([&](double x, double y) { return aa(x, y); }), 1.0, 1e-4);
}

TEST(Quadrature, KoshinoRuleIsRotated) {
    const TwoPhotonSpectrum k = koshino_pulse(0.5, 50.0);
    EXPECT_NEAR(Quadrature2D::for_spectrum(k, 120).norm([&](double x, double y) { return k(x, y); }), 1.0, 1e-4);
}

TEST(Overlap1, SelfOverlapIsOne) {
    const OnePhotonPulse a = lorentzian(0.4, 0.3);
    const OverlapResult r = overlap1(a, a);
    EXPECT_NEAR(r.amplitude.real(), 1.0, 1e-13);
    EXPECT_NEAR(r.fidelity(), 1.0, 1e-13);
}

TEST(Overlap1, ShiftedPulsesUseTheCommonShift) {
    const OnePhotonPulse a = time_shift(lorentzian(0.0, 0.3), 4.0);
    EXPECT_NEAR(std::abs(overlap1(a, a).amplitude), 1.0, 1e-12);
}

TEST(Overlap2, ProductOfLinearOutputsFactorizes) {
    // A separable "each photon alone" output overlaps like the square of the one-photon overlap.
    const SystemParams p(1.0, 4.0);
    const OnePhotonPulse a = lorentzian(0.1, 0.3);
    const OnePhotonPulse out1 = apply(a, p);
    const TwoPhotonSpectrum in = product_state(a, a);
    const TwoPhotonOutput sep([&](double x, double y) { return out1(x) * out1(y); }, Provenance::Exact, in, p);
    const cplx c1 = overlap1(a, out1).amplitude;
    Overlap2Options opt;
    opt.nodes = 120;
    EXPECT_LT(std::abs(overlap2(in, sep, opt).amplitude - c1 * c1), 1e-8);
}

TEST(GateFidelity, PerfectGate) {
    const GateFidelityResult r = gate_fidelity(1.0, -1.0);
    EXPECT_NEAR(r.f_gate, 1.0, 1e-15);
    EXPECT_NEAR(r.conditional_phase, kPi, 1e-15);
}

TEST(GateFidelity, NoInteractionGivesQuarter) {
    // No conditional phase: |1 + 2 - 1|^2 / 16.
    EXPECT_NEAR(gate_fidelity(1.0, 1.0).f_gate, 0.25, 1e-15);
}

TEST(GateFidelity, PhaseIsWrappedIntoHalfOpenInterval) {
    const GateFidelityResult r = gate_fidelity(std::polar(1.0, 2.0), std::polar(1.0, -0.5));
    EXPECT_GT(r.conditional_phase, -kPi);
    EXPECT_LE(r.conditional_phase, kPi);
    EXPECT_NEAR(std::remainder(r.conditional_phase - (-0.5 - 4.0), 2.0 * kPi), 0.0, 1e-14);
}

TEST(Ideal, TimeReversedConvention) {
    const OnePhotonPulse s = full_excitation_pulse(SystemParams(1.0, 0.5));
    const OnePhotonPulse i = ideal_pulse(s, IdealConvention::TimeReversed);
    EXPECT_LT(std::abs(i(0.3) - std::conj(s(0.3))), 1e-15);
    EXPECT_STREQ(ideal_name(IdealConvention::Input), "input");
}

}  // namespace
}  // namespace vcav
