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

#include "vcav/core.hpp"

namespace vcav {
namespace {

TEST(SystemParams, RejectsNonPositiveRates) {
    EXPECT_THROW(SystemParams(0.0, 1.0), Error);
    EXPECT_THROW(SystemParams(1.0, -1.0), Error);
    EXPECT_THROW(SystemParams(1.0, 1.0, std::nan("")), Error);
    ErrorKind kind = ErrorKind::NoSolution;
    try {
        SystemParams(1.0, 0.0);
    } catch (const Error &e) {
        kind = e.kind();
    }
    EXPECT_EQ(kind, ErrorKind::ConfigError);
    EXPECT_TRUE(is_config_error(kind));
}

TEST(SystemParams, GammaAndScale) {
    const SystemParams p(2.0, 8.0, -10.0);
    EXPECT_DOUBLE_EQ(p.gamma(), 0.5);
    EXPECT_DOUBLE_EQ(p.scale(), 10.0);
}

TEST(Kernels, RootsAreZerosOfP) {
    for (const SystemParams p : {SystemParams(1.0, 0.3), SystemParams(1.0, 2.0), SystemParams(1.0, 20.0, 0.4)}) {
        const auto [r1, r2] = kernel_P_roots(p);
        EXPECT_LT(r1.imag(), 0.0);
        EXPECT_LT(r2.imag(), 0.0);
        for (double w : {-1.3, 0.0, 0.7}) {
            const cplx direct = kernel_P(w, p);
            const cplx factored = -(w - r1) * (w - r2);
            EXPECT_LT(std::abs(direct - factored), 1e-12 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST(Kernels, CriticalCouplingGivesIdenticalDoubleRoot) {
    const auto [r1, r2] = kernel_P_roots(SystemParams(1.0, 2.0));
    EXPECT_EQ(r1, r2);
    EXPECT_NEAR(r1.imag(), -1.0, 1e-15);
    EXPECT_NEAR(r1.real(), 0.0, 1e-15);
}

TEST(Kernels, GoodCavityRootsSitAtTheVacuumRabiDoublet) {
    const SystemParams p(1.0, 0.2);
    const auto [r1, r2] = kernel_P_roots(p);
    const double split = std::sqrt(1.0 - 0.01);
    EXPECT_NEAR(std::max(r1.real(), r2.real()), split, 1e-14);
    EXPECT_NEAR(std::min(r1.real(), r2.real()), -split, 1e-14);
    EXPECT_NEAR(r1.imag(), -0.1, 1e-14);
}

TEST(Kernels, K) { EXPECT_EQ(kernel_K(0.5, SystemParams(1.0, 3.0)), cplx(3.0, 0.5)); }

TEST(FrequencyGrid, NodesAreSymmetricAboutCenter) {
    const FrequencyGrid g(1.0, 2.0, 5);
    EXPECT_DOUBLE_EQ(g.spacing(), 1.0);
    EXPECT_DOUBLE_EQ(g.at(0), -1.0);
    EXPECT_DOUBLE_EQ(g.at(2), 1.0);
    EXPECT_DOUBLE_EQ(g.at(4), 3.0);
    EXPECT_EQ(g.nodes().size(), 5u);
}

TEST(FrequencyGrid, RejectsEvenCounts) {
    EXPECT_THROW(FrequencyGrid(0.0, 1.0, 4), Error);
    EXPECT_THROW(FrequencyGrid(0.0, 1.0, 1), Error);
}

TEST(ErrorKind, NamesAreStable) {
    EXPECT_STREQ(error_kind_name(ErrorKind::PoleOnAxis), "PoleOnAxis");
    EXPECT_STREQ(error_kind_name(ErrorKind::NormDrift), "NormDrift");
    EXPECT_FALSE(is_config_error(ErrorKind::NormDrift));
}

}  // namespace
}  // namespace vcav
