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

#ifndef VCAV_SCATTER2_HPP
#define VCAV_SCATTER2_HPP

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "vcav/core.hpp"
#include "vcav/pulses.hpp"
#include "vcav/rational.hpp"

namespace vcav {

enum class Provenance { Exact, BadCavity, GoodCavity };
const char *provenance_name(Provenance p);

// Long-time two-photon amplitude as a pointwise evaluator.
class TwoPhotonOutput {
  public:
    using Evaluator = std::function<cplx(double, double)>;

    TwoPhotonOutput(Evaluator f, Provenance prov, TwoPhotonSpectrum input, SystemParams params);

    cplx operator()(double wa, double wb) const { return f_(wa, wb); }
    Provenance provenance() const { return prov_; }
    const TwoPhotonSpectrum &input() const { return *input_; }
    const SystemParams &params() const { return params_; }
    bool symmetric() const { return input_->symmetric(); }

    // Row-major samples on grid x grid; mirrors across the diagonal for symmetric inputs.
    std::vector<cplx> sample(const FrequencyGrid &grid) const;

  private:
    Evaluator f_;
    Provenance prov_;
    std::shared_ptr<const TwoPhotonSpectrum> input_;
    SystemParams params_;
};

struct ExactOptions {
    // Apply (kappa + i w)/(kappa - i w) to each photon. Off gives the interior amplitude.
    bool outcoupling = true;
    // Force the sampled-slice path even for closed-form inputs.
    bool force_grid = false;
    // Grid used by the sampled path when the input is not already sampled.
    // half_extent <= 0 picks 30 linewidths around the input center.
    double grid_half_extent = 0.0;
    int grid_count = 401;
};

TwoPhotonOutput exact(const TwoPhotonSpectrum &input, const SystemParams &p, const ExactOptions &opt = {});

// lim_{s->0+} int f(x)/(s + i(x - target)) dx = pi f(target) - i PV int f(x)/(x - target) dx
cplx limit_integral(const Rational &f, double target);
cplx limit_integral(const RationalSpectrum &f, double target);
// Uniformly sampled f, singularity-subtracted trapezoid rule.
cplx limit_integral(const FrequencyGrid &grid, const std::vector<cplx> &f, double target);

TwoPhotonOutput bad_cavity(const TwoPhotonSpectrum &input, double gamma, double delta);
// branch = +1 or -1 selects the vacuum-Rabi line at +g or -g.
TwoPhotonOutput good_cavity(const TwoPhotonSpectrum &input, const SystemParams &p, int branch);

std::pair<cplx, cplx> koshino_AB(double wa, double wb, double gamma, double T1);
// Reduced A + B with all (wa + wb) terms dropped, as a function of d = wa - wb.
cplx koshino_reduced_sum(double d, double gamma, double T1);
// max |A + B + 1| of the reduced form over |d| <= d_max on n points.
double koshino_reduced_residual(double gamma, double T1, double d_max, int n = 2001);
double koshino_fixed_point(double gamma);

}  // namespace vcav

#endif
