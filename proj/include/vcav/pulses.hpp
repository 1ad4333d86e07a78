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

#ifndef VCAV_PULSES_HPP
#define VCAV_PULSES_HPP

#include <memory>
#include <string>
#include <vector>

#include "vcav/core.hpp"
#include "vcav/rational.hpp"

namespace vcav {

// Single-photon spectral amplitude xi(w) = R(w) exp(i w T), with R rational.
// The convention xi(w) = int f(t) exp(i w t) dt makes a positive T a later arrival.
class OnePhotonPulse {
  public:
    OnePhotonPulse(Rational spectrum, std::string label, double shift = 0.0);

    const Rational &rational() const { return spectrum_; }
    const std::string &label() const { return label_; }
    double shift() const { return shift_; }
    bool is_shifted() const { return shift_ != 0.0; }
    // Factor applied by the constructor to reach unit norm (1 when none was needed).
    double norm_factor() const { return norm_factor_; }
    void set_norm_factor(double f) { norm_factor_ = f; }

    // Rough position and width of the spectrum, used to place quadrature nodes.
    double center() const;
    double width() const;

    cplx operator()(double w) const;
    // Unshifted rational part only.
    cplx rational_value(double w) const { return spectrum_(w); }
    // Exact norm of the rational part (the shift is unimodular).
    double norm() const;

    bool same_as(const OnePhotonPulse &o) const;

  private:
    Rational spectrum_;
    std::string label_;
    double shift_;
    double norm_factor_ = 1.0;
};

OnePhotonPulse lorentzian(double omega0, double sigma);
// Time-domain counterpart of the Lorentzian family: sqrt(sigma) exp(-sigma |t|).
double lorentzian_time_profile(double t, double sigma);
// f(t) = (2 pi)^-1/2 int xi(w) exp(-i w t) dw, by residues.
cplx time_profile(const OnePhotonPulse &pulse, double t);
OnePhotonPulse full_excitation_pulse(const SystemParams &p);
OnePhotonPulse time_reverse(const OnePhotonPulse &pulse);
OnePhotonPulse time_shift(const OnePhotonPulse &pulse, double T);

class TwoPhotonSpectrum {
  public:
    enum class Form { Product, Koshino, Sampled };

    static TwoPhotonSpectrum product(const OnePhotonPulse &a, const OnePhotonPulse &b);
    static TwoPhotonSpectrum koshino(double T1, double T2);
    // values are row-major: values[i * N + j] = xi(grid.at(i), grid.at(j)). Bilinear in between,
    // zero outside the grid.
    static TwoPhotonSpectrum sampled(const FrequencyGrid &grid, std::vector<cplx> values);

    Form form() const { return form_; }
    bool symmetric() const { return symmetric_; }
    std::string label() const;

    cplx operator()(double wa, double wb) const;
    // Amplitude without the common shift phase of a product form.
    cplx unshifted(double wa, double wb) const;

    // True when anti_diagonal is available (product with a common shift, or Koshino).
    bool rational() const;
    // Common time shift of a product form; the amplitude carries exp(i (wa + wb) T).
    double shift() const;
    // x -> xi(E - x, x) without the shift phase.
    Rational anti_diagonal(double E) const;

    // Nominal norm: exact for the closed forms, trapezoid sum for samples.
    double norm() const;
    double center() const;
    double width() const;

    const OnePhotonPulse *factor_a() const { return a_.get(); }
    const OnePhotonPulse *factor_b() const { return b_.get(); }
    double koshino_T1() const { return T1_; }
    double koshino_T2() const { return T2_; }
    const FrequencyGrid *grid() const { return grid_.get(); }

    // Returns a copy whose amplitude is conjugated (the time-reversed two-photon state).
    TwoPhotonSpectrum time_reversed() const;

  private:
    TwoPhotonSpectrum() = default;

    Form form_ = Form::Product;
    bool symmetric_ = false;
    std::shared_ptr<const OnePhotonPulse> a_;
    std::shared_ptr<const OnePhotonPulse> b_;
    double T1_ = 0.0;
    double T2_ = 0.0;
    std::shared_ptr<const FrequencyGrid> grid_;
    std::shared_ptr<const std::vector<cplx>> samples_;
};

TwoPhotonSpectrum product_state(const OnePhotonPulse &a, const OnePhotonPulse &b);
TwoPhotonSpectrum koshino_pulse(double T1, double T2);
// Temporal profile of the Koshino state.
double koshino_time_profile(double ta, double tb, double T1, double T2);

}  // namespace vcav

#endif
