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

#ifndef VCAV_TOOLS_DESCRIPTOR_HPP
#define VCAV_TOOLS_DESCRIPTOR_HPP

#include <string>
#include <vector>

#include "vcav/core.hpp"
#include "vcav/pulses.hpp"

namespace vcav::cli {

// Pulse descriptors:
//   lorentzian(w0, sigma) | sstar | s | shift(P, T) | reverse(P)   one photon
//   product(P, P) | koshino(T1, T2)                                 two photons
// Frequencies and times are in the caller's units; `scale` is g expressed in those units.
struct Expr {
    std::string name;
    bool is_number = false;
    double number = 0.0;
    std::vector<Expr> args;
};

Expr parse_descriptor(const std::string &text);
std::string to_string(const Expr &e);

bool is_two_photon(const Expr &e);
OnePhotonPulse build_pulse(const Expr &e, const SystemParams &p, double scale);
TwoPhotonSpectrum build_two_photon(const Expr &e, const SystemParams &p, double scale);

}  // namespace vcav::cli

#endif
