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

#ifndef VCAV_OPTIMIZER_HPP
#define VCAV_OPTIMIZER_HPP

#include <string>
#include <vector>

#include "vcav/core.hpp"
#include "vcav/fidelity.hpp"

namespace vcav {

// Good: sigma = r kappa, resonance at +-sqrt(g^2 - kappa^2/4). Bad: sigma = r gamma, resonance at 0.
enum class Regime { Good, Bad };
enum class PulseFamily { Lorentzian, FullExcitation };

const char *regime_name(Regime r);
double regime_linewidth(Regime r, const SystemParams &p);
// branch selects the sign of the good-cavity line; ignored for the bad cavity.
double regime_resonance(Regime r, const SystemParams &p, int branch = 1);

struct SweepPoint {
    SystemParams params;
    PulseFamily family = PulseFamily::Lorentzian;
    double r = 0.0;
    double omega0 = 0.0;
    double sigma = 0.0;
    cplx c1;
    cplx c2;
    double f_gate = 0.0;
    // Overlaps against the time-reversed input, when requested.
    bool has_time_reversed = false;
    cplx c1_tr;
    cplx c2_tr;
    // Non-empty when the point failed; the other fields are then NaN.
    std::string error;
};

struct EvalOptions {
    int nodes = 80;
    bool two_photon = true;
    bool time_reversed = false;
};

// One Lorentzian (or full-excitation) point with the input as ideal.
SweepPoint evaluate_point(const SystemParams &p, PulseFamily family, double omega0, double sigma,
                          const EvalOptions &opt = {});

struct SweepSpec {
    PulseFamily family = PulseFamily::Lorentzian;
    Regime regime = Regime::Bad;
    double g = 1.0;
    std::vector<double> kappa_over_g{1.0};
    std::vector<double> r{1.0};
    // With omega0_relative the values are offsets from the regime resonance (units of g).
    std::vector<double> omega0{0.0};
    bool omega0_relative = true;
    int branch = 1;
    std::vector<double> delta{0.0};
    EvalOptions eval;
};

// Points ordered with delta varying fastest, then omega0, r and kappa/g.
std::vector<SweepPoint> sweep(const SweepSpec &spec);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool fixed() const { return lo == hi; }
};

// omega0_offset and delta are in units of the regime linewidth (kappa or gamma).
struct OptimizeBounds {
    Regime regime = Regime::Bad;
    int branch = 1;
    Interval kappa_over_g{10.0, 200.0};
    Interval r{0.1, 2.0};
    Interval omega0_offset{0.0, 0.0};
    Interval delta{0.0, 0.0};
};

struct OptimizeOptions {
    double tol = 1e-7;
    int max_evals = 600;
    int grid_per_axis = 8;
    int refine_starts = 3;
    int coarse_nodes = 40;
    int nodes = 80;
};

struct Optimum {
    SweepPoint best;
    OptimizeBounds bounds;
    std::vector<SweepPoint> starts;
    // Best f_gate after each refinement iteration.
    std::vector<double> history;
    int evaluations = 0;
    bool converged = false;
    std::string message;
};

Optimum maximize_gate_fidelity(const OptimizeBounds &bounds, const OptimizeOptions &opt = {});

struct Asymptote {
    std::vector<double> anchors;
    std::vector<double> values;
    double exponent = 0.0;  // values ~ limit + sum_k a_k h^k with h = anchor^exponent
    double limit = 0.0;
    double error_estimate = 0.0;
};

// Polynomial extrapolation in h = anchor^exponent to h = 0.
Asymptote richardson(const std::vector<double> &anchors, const std::vector<double> &values, double exponent);

// f_gate at sigma = r gamma, omega0 = delta = 0 for each kappa/g anchor, extrapolated in (g/kappa)^2.
Asymptote bad_cavity_asymptote(const std::vector<double> &kappa_over_g, double r, int nodes = 120);

}  // namespace vcav

#endif
