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

#ifndef VCAV_SCATTER1_HPP
#define VCAV_SCATTER1_HPP

#include "vcav/core.hpp"
#include "vcav/pulses.hpp"
#include "vcav/rational.hpp"

namespace vcav {

// t(w) = -[(w - i kappa)(w + delta) - g^2] / [(w + i kappa)(w + delta) - g^2], |t| = 1.
cplx transfer_amplitude(double omega, const SystemParams &p);
cplx transfer_amplitude(cplx omega, const SystemParams &p);
Rational transfer_rational(const SystemParams &p);

// Mirror output-coupling factor (kappa + i w)/(kappa - i w).
cplx outcoupling_factor(double omega, const SystemParams &p);

// Ratio of the long-time interior amplitude to the input amplitude.
cplx interior_map(double omega, const SystemParams &p);

// Output pulse t(w) xi(w). Pole-zero pairs cancel, so the full-excitation pulse maps to
// minus its time reverse exactly.
OnePhotonPulse apply(const OnePhotonPulse &pulse, const SystemParams &p);

// Overlap of the scattered Lorentzian with the input Lorentzian. Closing the contour
// in the upper half-plane around the double pole q = omega0 + i sigma gives
// t(q) - i sigma t'(q).
OverlapResult lorentzian_overlap_closed_form(double omega0, double sigma, const SystemParams &p);

}  // namespace vcav

#endif
