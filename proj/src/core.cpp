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

#include "vcav/core.hpp"

#include <algorithm>
#include <cmath>

namespace vcav {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DecayViolation: return "DecayViolation";
        case ErrorKind::PoleOnAxis: return "PoleOnAxis";
        case ErrorKind::NonPositiveWidth: return "NonPositiveWidth";
        case ErrorKind::AsymmetricInput: return "AsymmetricInput";
        case ErrorKind::UnsupportedForm: return "UnsupportedForm";
        case ErrorKind::BadRegime: return "BadRegime";
        case ErrorKind::NoSolution: return "NoSolution";
        case ErrorKind::NormViolation: return "NormViolation";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::NormDrift: return "NormDrift";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

bool is_config_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonPositiveWidth:
        case ErrorKind::AsymmetricInput:
        case ErrorKind::UnsupportedForm:
        case ErrorKind::BadRegime:
        case ErrorKind::ConfigError:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorKind kind, const std::string &what)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

SystemParams::SystemParams(double g_, double kappa_, double delta_) : g(g_), kappa(kappa_), delta(delta_) {
    if (!(g > 0.0) || !(kappa > 0.0) || !std::isfinite(g) || !std::isfinite(kappa) || !std::isfinite(delta)) {
        throw Error(ErrorKind::ConfigError, "need g > 0 and kappa > 0");
    }
}

double SystemParams::scale() const { return std::max({g, kappa, std::abs(delta)}); }

FrequencyGrid::FrequencyGrid(double center, double half_extent, int count)
    : center_(center), half_extent_(half_extent), count_(count) {
    if (count < 3 || count % 2 == 0) {
        throw Error(ErrorKind::ConfigError, "grid count must be odd and at least 3");
    }
    if (!(half_extent > 0.0) || !std::isfinite(half_extent) || !std::isfinite(center)) {
        throw Error(ErrorKind::ConfigError, "grid half extent must be positive");
    }
}

std::vector<double> FrequencyGrid::nodes() const {
    std::vector<double> w(count_);
    for (int i = 0; i < count_; ++i) w[i] = at(i);
    return w;
}

cplx kernel_K(double omega, const SystemParams &p) { return {p.kappa, omega}; }

cplx kernel_P(double omega, const SystemParams &p) {
    return p.g * p.g - kI * (omega + p.delta) * cplx(p.kappa, -omega);
}

std::pair<cplx, cplx> kernel_P_roots(const SystemParams &p) {
    // w^2 + b w + c with b = delta + i kappa, c = i kappa delta - g^2
    const cplx b(p.delta, p.kappa);
    const cplx c(-p.g * p.g, p.kappa * p.delta);
    const cplx disc = cplx(p.delta, -p.kappa) * cplx(p.delta, -p.kappa) + 4.0 * p.g * p.g;
    if (disc == cplx(0.0, 0.0)) return {-0.5 * b, -0.5 * b};
    cplx sq = std::sqrt(disc);
    if (std::real(std::conj(b) * sq) < 0.0) sq = -sq;
    const cplx q = -0.5 * (b + sq);
    return {q, c / q};
}

}  // namespace vcav
