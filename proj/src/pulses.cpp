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

#include "vcav/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vcav {

OnePhotonPulse::OnePhotonPulse(Rational spectrum, std::string label, double shift)
    : spectrum_(std::move(spectrum)), label_(std::move(label)), shift_(shift) {}

double OnePhotonPulse::center() const {
    const auto &ps = spectrum_.poles();
    if (ps.empty()) return 0.0;
    double c = 0.0;
    for (const cplx &p : ps) c += p.real();
    return c / static_cast<double>(ps.size());
}

double OnePhotonPulse::width() const {
    const auto &ps = spectrum_.poles();
    if (ps.empty()) return 1.0;
    const double c = center();
    double w2 = 0.0;
    for (const cplx &p : ps) w2 += std::norm(p - c);
    return std::sqrt(w2 / static_cast<double>(ps.size()));
}

cplx OnePhotonPulse::operator()(double w) const {
    const cplx v = spectrum_(w);
    return shift_ == 0.0 ? v : v * std::polar(1.0, w * shift_);
}

double OnePhotonPulse::norm() const { return rational_integrate(spectrum_ * spectrum_.conj()).real(); }

bool OnePhotonPulse::same_as(const OnePhotonPulse &o) const {
    const Rational &x = spectrum_;
    const Rational &y = o.spectrum_;
    return shift_ == o.shift_ && x.scale() == y.scale() &&
           std::equal(x.zeros().begin(), x.zeros().end(), y.zeros().begin(), y.zeros().end()) &&
           std::equal(x.poles().begin(), x.poles().end(), y.poles().begin(), y.poles().end());
}

OnePhotonPulse lorentzian(double omega0, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::NonPositiveWidth, "Lorentzian width must be positive");
    }
    const double amp = std::sqrt(2.0 * sigma * sigma * sigma / kPi);
    std::ostringstream label;
    label << "lorentzian(omega0=" << omega0 << ",sigma=" << sigma << ")";
    return OnePhotonPulse(Rational(amp, {}, {cplx(omega0, sigma), cplx(omega0, -sigma)}), label.str());
}

double lorentzian_time_profile(double t, double sigma) { return std::sqrt(sigma) * std::exp(-sigma * std::abs(t)); }

cplx time_profile(const OnePhotonPulse &pulse, double t) {
    const Rational &r = pulse.rational();
    if (r.decay_order() < 1) throw Error(ErrorKind::DecayViolation, "time profile needs a decaying spectrum");
    const RationalSpectrum pf = r.partial_fractions();
    const double tau = t - pulse.shift();
    auto side = [&](bool upper) {
        cplx acc(0.0, 0.0);
        for (const PoleTerm &term : pf.terms()) {
            if ((term.pole.imag() > 0.0) != upper) continue;
            const cplx e = std::exp(-kI * term.pole * tau);
            acc += term.r1 * e;
            if (term.multiplicity == 2) acc += -kI * tau * term.r2 * e;
        }
        return acc;
    };
    // Close below for tau > 0 and above for tau < 0; average the two at tau = 0.
    const cplx below = -2.0 * kPi * kI * side(false);
    const cplx above = 2.0 * kPi * kI * side(true);
    const cplx integral = tau > 0.0 ? below : (tau < 0.0 ? above : 0.5 * (below + above));
    return integral / std::sqrt(2.0 * kPi);
}

OnePhotonPulse full_excitation_pulse(const SystemParams &p) {
    // The denominator (w - i kappa)(w + delta) - g^2 has the conjugate roots of P.
    const auto [r1, r2] = kernel_P_roots(p);
    Rational s(p.g * std::sqrt(p.kappa / kPi), {}, {std::conj(r1), std::conj(r2)});
    OnePhotonPulse pulse(s, "sstar");
    const double n = pulse.norm();
    if (std::abs(n - 1.0) > 1e-9) {
        const double f = 1.0 / std::sqrt(n);
        pulse = OnePhotonPulse(s * f, "sstar");
        pulse.set_norm_factor(f);
    }
    return pulse;
}

OnePhotonPulse time_reverse(const OnePhotonPulse &pulse) {
    std::string label = pulse.label();
    if (label == "sstar") {
        label = "s";
    } else if (label == "s") {
        label = "sstar";
    } else if (label.rfind("lorentzian", 0) != 0) {
        label = "reverse(" + label + ")";
    }
    OnePhotonPulse r(pulse.rational().conj(), label, -pulse.shift());
    r.set_norm_factor(pulse.norm_factor());
    return r;
}

OnePhotonPulse time_shift(const OnePhotonPulse &pulse, double T) {
    OnePhotonPulse r(pulse.rational(), pulse.label(), pulse.shift() + T);
    r.set_norm_factor(pulse.norm_factor());
    return r;
}

TwoPhotonSpectrum TwoPhotonSpectrum::product(const OnePhotonPulse &a, const OnePhotonPulse &b) {
    TwoPhotonSpectrum s;
    s.form_ = Form::Product;
    s.a_ = std::make_shared<const OnePhotonPulse>(a);
    s.b_ = std::make_shared<const OnePhotonPulse>(b);
    s.symmetric_ = a.same_as(b);
    return s;
}

TwoPhotonSpectrum TwoPhotonSpectrum::koshino(double T1, double T2) {
    if (!(T1 > 0.0) || !(T2 > 0.0) || !std::isfinite(T1) || !std::isfinite(T2)) {
        throw Error(ErrorKind::NonPositiveWidth, "Koshino times must be positive");
    }
    TwoPhotonSpectrum s;
    s.form_ = Form::Koshino;
    s.T1_ = T1;
    s.T2_ = T2;
    s.symmetric_ = true;
    return s;
}

TwoPhotonSpectrum TwoPhotonSpectrum::sampled(const FrequencyGrid &grid, std::vector<cplx> values) {
    const size_t n = static_cast<size_t>(grid.count());
    if (values.size() != n * n) throw Error(ErrorKind::ConfigError, "sample count does not match grid");
    TwoPhotonSpectrum s;
    s.form_ = Form::Sampled;
    double vmax = 0.0;
    for (const cplx &v : values) vmax = std::max(vmax, std::abs(v));
    bool sym = true;
    for (size_t i = 0; i < n && sym; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (std::abs(values[i * n + j] - values[j * n + i]) > 1e-12 * vmax) {
                sym = false;
                break;
            }
        }
    }
    s.symmetric_ = sym;
    s.grid_ = std::make_shared<const FrequencyGrid>(grid);
    s.samples_ = std::make_shared<const std::vector<cplx>>(std::move(values));
    return s;
}

std::string TwoPhotonSpectrum::label() const {
    switch (form_) {
        case Form::Product: return "product(" + a_->label() + "," + b_->label() + ")";
        case Form::Koshino: {
            std::ostringstream o;
            o << "koshino(T1=" << T1_ << ",T2=" << T2_ << ")";
            return o.str();
        }
        case Form::Sampled: return "sampled";
    }
    return "";
}

namespace {

double koshino_norm_const(double T1, double T2) {
    return 2.0 * std::sqrt(2.0) / (kPi * std::pow(T1 * T2, 1.5));
}

}  // namespace

cplx TwoPhotonSpectrum::operator()(double wa, double wb) const {
    switch (form_) {
        case Form::Product: return (*a_)(wa) * (*b_)(wb);
        case Form::Koshino: {
            const double s = wa + wb;
            const double d = wa - wb;
            return koshino_norm_const(T1_, T2_) / ((s * s + 1.0 / (T2_ * T2_)) * (d * d + 1.0 / (T1_ * T1_)));
        }
        case Form::Sampled: {
            const FrequencyGrid &g = *grid_;
            const int n = g.count();
            const double h = g.spacing();
            const double x = (wa - g.at(0)) / h;
            const double y = (wb - g.at(0)) / h;
            if (x < 0.0 || y < 0.0 || x > n - 1 || y > n - 1) return 0.0;
            const int i = std::min(static_cast<int>(x), n - 2);
            const int j = std::min(static_cast<int>(y), n - 2);
            const double fx = x - i;
            const double fy = y - j;
            const auto &v = *samples_;
            auto at = [&](int a, int b) { return v[static_cast<size_t>(a) * n + b]; };
            return (1 - fx) * ((1 - fy) * at(i, j) + fy * at(i, j + 1)) +
                   fx * ((1 - fy) * at(i + 1, j) + fy * at(i + 1, j + 1));
        }
    }
    return 0.0;
}

cplx TwoPhotonSpectrum::unshifted(double wa, double wb) const {
    if (form_ == Form::Product) return a_->rational_value(wa) * b_->rational_value(wb);
    return (*this)(wa, wb);
}

bool TwoPhotonSpectrum::rational() const {
    switch (form_) {
        case Form::Product: return a_->shift() == b_->shift();
        case Form::Koshino: return true;
        case Form::Sampled: return false;
    }
    return false;
}

double TwoPhotonSpectrum::shift() const { return form_ == Form::Product ? a_->shift() : 0.0; }

Rational TwoPhotonSpectrum::anti_diagonal(double E) const {
    switch (form_) {
        case Form::Product:
            if (!rational()) throw Error(ErrorKind::UnsupportedForm, "photons carry different time shifts");
            return a_->rational().reflected(E) * b_->rational();
        case Form::Koshino: {
            const double c = koshino_norm_const(T1_, T2_) / (E * E + 1.0 / (T2_ * T2_)) / 4.0;
            const double h = 0.5 / T1_;
            return Rational(c, {}, {cplx(0.5 * E, h), cplx(0.5 * E, -h)});
        }
        case Form::Sampled: break;
    }
    throw Error(ErrorKind::UnsupportedForm, "sampled spectra have no closed form");
}

double TwoPhotonSpectrum::norm() const {
    switch (form_) {
        case Form::Product: return a_->norm() * b_->norm();
        case Form::Koshino: return 1.0;
        case Form::Sampled: {
            double s = 0.0;
            for (const cplx &v : *samples_) s += std::norm(v);
            const double h = grid_->spacing();
            return s * h * h;
        }
    }
    return 0.0;
}

double TwoPhotonSpectrum::center() const {
    switch (form_) {
        case Form::Product: return 0.5 * (a_->center() + b_->center());
        case Form::Koshino: return 0.0;
        case Form::Sampled: return grid_->center();
    }
    return 0.0;
}

double TwoPhotonSpectrum::width() const {
    switch (form_) {
        case Form::Product: return std::max(a_->width(), b_->width());
        case Form::Koshino: return 1.0 / T1_;
        case Form::Sampled: return grid_->half_extent() / 10.0;
    }
    return 1.0;
}

TwoPhotonSpectrum TwoPhotonSpectrum::time_reversed() const {
    switch (form_) {
        case Form::Product: return product(time_reverse(*a_), time_reverse(*b_));
        case Form::Koshino: return *this;
        case Form::Sampled: {
            std::vector<cplx> v(*samples_);
            for (cplx &x : v) x = std::conj(x);
            return sampled(*grid_, std::move(v));
        }
    }
    return *this;
}

TwoPhotonSpectrum product_state(const OnePhotonPulse &a, const OnePhotonPulse &b) {
    return TwoPhotonSpectrum::product(a, b);
}

TwoPhotonSpectrum koshino_pulse(double T1, double T2) { return TwoPhotonSpectrum::koshino(T1, T2); }

double koshino_time_profile(double ta, double tb, double T1, double T2) {
    return std::exp(-std::abs(ta - tb) / T1 - std::abs(ta + tb) / T2) / std::sqrt(2.0 * T1 * T2);
}

}  // namespace vcav
