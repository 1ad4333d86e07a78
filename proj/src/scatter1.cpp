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

#include "vcav/scatter1.hpp"

#include <cmath>

namespace vcav {

cplx transfer_amplitude(cplx w, const SystemParams &p) {
    const double g2 = p.g * p.g;
    const cplx num = (w - kI * p.kappa) * (w + p.delta) - g2;
    const cplx den = (w + kI * p.kappa) * (w + p.delta) - g2;
    return -num / den;
}

cplx transfer_amplitude(double omega, const SystemParams &p) { return transfer_amplitude(cplx(omega, 0.0), p); }

Rational transfer_rational(const SystemParams &p) {
    const auto [r1, r2] = kernel_P_roots(p);
    return Rational(-1.0, {std::conj(r1), std::conj(r2)}, {r1, r2});
}

cplx outcoupling_factor(double omega, const SystemParams &p) {
    return cplx(p.kappa, omega) / cplx(p.kappa, -omega);
}

cplx interior_map(double omega, const SystemParams &p) {
    return transfer_amplitude(omega, p) / outcoupling_factor(omega, p);
}

OnePhotonPulse apply(const OnePhotonPulse &pulse, const SystemParams &p) {
    const double n = pulse.norm();
    if (std::abs(n - 1.0) > 1e-6) throw Error(ErrorKind::NormViolation, "input pulse is not normalized");
    Rational out = (transfer_rational(p) * pulse.rational()).cancelled(p.scale());
    std::string label = pulse.label() == "sstar" ? "s" : "scattered(" + pulse.label() + ")";
    OnePhotonPulse r(std::move(out), std::move(label), pulse.shift());
    r.set_norm_factor(pulse.norm_factor());
    return r;
}

OverlapResult lorentzian_overlap_closed_form(double omega0, double sigma, const SystemParams &p) {
    if (!(sigma > 0.0)) throw Error(ErrorKind::NonPositiveWidth, "Lorentzian width must be positive");
    const cplx q(omega0, sigma);
    const double g2 = p.g * p.g;
    const cplx num = (q - kI * p.kappa) * (q + p.delta) - g2;
    const cplx den = (q + kI * p.kappa) * (q + p.delta) - g2;
    const cplx dnum = 2.0 * q + p.delta - kI * p.kappa;
    const cplx dden = 2.0 * q + p.delta + kI * p.kappa;
    const cplx t = -num / den;
    const cplx dt = -(dnum * den - num * dden) / (den * den);
    return OverlapResult(t - kI * sigma * dt);
}

}  // namespace vcav
