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

#ifndef VCAV_FIDELITY_HPP
#define VCAV_FIDELITY_HPP

#include <functional>
#include <vector>

#include "vcav/core.hpp"
#include "vcav/pulses.hpp"
#include "vcav/scatter2.hpp"

namespace vcav {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre on [-1, 1].
QuadRule gauss_legendre(int n);
// Gauss-Legendre in theta with w = center + scale tan(theta); integrates over the real line.
QuadRule tan_gauss_legendre(int n, double center, double scale);
// One tan-mapped segment per spectral peak of the pulse, split at the midpoints between peaks.
QuadRule pulse_rule(const OnePhotonPulse &pulse, int n_per_peak);
// One tan-mapped segment per (center, half-width) peak; overlapping peaks merge.
QuadRule peak_rule(std::vector<std::pair<double, double>> peaks, int n_per_peak);

// Cartesian or rotated (sum/difference) product rule over the plane.
class Quadrature2D {
  public:
    static Quadrature2D cartesian(QuadRule a, QuadRule b);
    // wa = (s + d)/2, wb = (s - d)/2 with Jacobian 1/2.
    static Quadrature2D rotated(QuadRule s, QuadRule d);
    // Rule adapted to the spectrum's structure; n nodes per peak and axis.
    static Quadrature2D for_spectrum(const TwoPhotonSpectrum &x, int n);

    // sum_ij w_ij conj(f) h. Deterministic row-wise summation.
    cplx inner(const std::function<cplx(double, double)> &f, const std::function<cplx(double, double)> &h) const;
    double norm(const std::function<cplx(double, double)> &f) const;
    double l2_distance(const std::function<cplx(double, double)> &f,
                       const std::function<cplx(double, double)> &h) const;
    // Symmetric integrands are summed over the upper triangle only (cartesian rules with equal axes).
    void set_symmetric(bool s) { symmetric_ = s; }
    size_t size() const { return a_.nodes.size() * b_.nodes.size(); }

  private:
    QuadRule a_;
    QuadRule b_;
    bool rotated_ = false;
    bool symmetric_ = false;
};

enum class IdealConvention { Input, TimeReversed };
const char *ideal_name(IdealConvention c);

OnePhotonPulse ideal_pulse(const OnePhotonPulse &input, IdealConvention c);
TwoPhotonSpectrum ideal_spectrum(const TwoPhotonSpectrum &input, IdealConvention c);

// int conj(ideal) out dw, by residues when both pulses share a time shift.
OverlapResult overlap1(const OnePhotonPulse &ideal, const OnePhotonPulse &out);

struct Overlap2Options {
    int nodes = 120;
    // Also verify the output norm on the same rule (tolerance output_norm_tol).
    bool check_output_norm = false;
    double norm_tol = 1e-6;
    double output_norm_tol = 1e-3;
};

OverlapResult overlap2(const TwoPhotonSpectrum &ideal, const TwoPhotonOutput &out, const Overlap2Options &opt = {});

struct GateFidelityResult {
    cplx c1;
    cplx c2;
    double f_gate = 0.0;
    double conditional_phase = 0.0;  // arg c2 - 2 arg c1 wrapped to (-pi, pi]
};

GateFidelityResult gate_fidelity(cplx c1, cplx c2);

}  // namespace vcav

#endif
