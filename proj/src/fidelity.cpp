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

#include "vcav/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/math/special_functions/legendre.hpp>

namespace vcav {

QuadRule gauss_legendre(int n) {
    if (n < 1) throw Error(ErrorKind::ConfigError, "quadrature needs at least one node");
    // Zeros are cached per order; the table is only ever appended to.
    static std::mutex mu;
    static std::map<int, QuadRule> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    const std::vector<double> pos = boost::math::legendre_p_zeros<double>(n);
    QuadRule r;
    for (double x : pos) {
        const double dp = boost::math::legendre_p_prime(n, x);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        if (x == 0.0) {
            r.nodes.push_back(0.0);
            r.weights.push_back(w);
        } else {
            r.nodes.push_back(x);
            r.weights.push_back(w);
            r.nodes.push_back(-x);
            r.weights.push_back(w);
        }
    }
    std::vector<size_t> idx(r.nodes.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return r.nodes[a] < r.nodes[b]; });
    QuadRule sorted;
    for (size_t i : idx) {
        sorted.nodes.push_back(r.nodes[i]);
        sorted.weights.push_back(r.weights[i]);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, sorted);
    return sorted;
}

namespace {

// Appends the tan-mapped rule for w in [lo, hi] (infinite ends allowed) to out.
void append_tan_segment(QuadRule &out, int n, double center, double scale, double lo, double hi) {
    const QuadRule gl = gauss_legendre(n);
    const double t0 = std::isinf(lo) ? -0.5 * kPi : std::atan((lo - center) / scale);
    const double t1 = std::isinf(hi) ? 0.5 * kPi : std::atan((hi - center) / scale);
    const double half = 0.5 * (t1 - t0);
    const double mid = 0.5 * (t1 + t0);
    for (size_t k = 0; k < gl.nodes.size(); ++k) {
        const double th = mid + half * gl.nodes[k];
        const double c = std::cos(th);
        out.nodes.push_back(center + scale * std::tan(th));
        out.weights.push_back(gl.weights[k] * half * scale / (c * c));
    }
}

}  // namespace

QuadRule tan_gauss_legendre(int n, double center, double scale) {
    if (!(scale > 0.0)) throw Error(ErrorKind::ConfigError, "quadrature scale must be positive");
    QuadRule r;
    const double inf = std::numeric_limits<double>::infinity();
    append_tan_segment(r, n, center, scale, -inf, inf);
    return r;
}

QuadRule peak_rule(std::vector<std::pair<double, double>> peaks, int n_per_peak) {
    if (peaks.empty()) return tan_gauss_legendre(n_per_peak, 0.0, 1.0);
    std::sort(peaks.begin(), peaks.end());
    std::vector<std::pair<double, double>> merged{peaks.front()};
    for (size_t i = 1; i < peaks.size(); ++i) {
        auto &[lc, lw] = merged.back();
        const auto [c, w] = peaks[i];
        if (c - lc < 2.0 * std::max(lw, w)) {
            // The narrower peak dominates |xi|^2 when the centers coincide.
            lw = std::max(std::min(lw, w), 0.5 * (c - lc));
            lc = 0.5 * (lc + c);
        } else {
            merged.emplace_back(c, w);
        }
    }
    QuadRule r;
    const double inf = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < merged.size(); ++k) {
        const double lo = k == 0 ? -inf : 0.5 * (merged[k - 1].first + merged[k].first);
        const double hi = k + 1 == merged.size() ? inf : 0.5 * (merged[k].first + merged[k + 1].first);
        append_tan_segment(r, n_per_peak, merged[k].first, merged[k].second, lo, hi);
    }
    return r;
}

QuadRule pulse_rule(const OnePhotonPulse &pulse, int n_per_peak) {
    std::vector<std::pair<double, double>> peaks;
    for (const cplx &p : pulse.rational().poles()) peaks.emplace_back(p.real(), std::abs(p.imag()));
    return peak_rule(std::move(peaks), n_per_peak);
}

Quadrature2D Quadrature2D::cartesian(QuadRule a, QuadRule b) {
    Quadrature2D q;
    q.a_ = std::move(a);
    q.b_ = std::move(b);
    return q;
}

Quadrature2D Quadrature2D::rotated(QuadRule s, QuadRule d) {
    Quadrature2D q = cartesian(std::move(s), std::move(d));
    q.rotated_ = true;
    return q;
}

Quadrature2D Quadrature2D::for_spectrum(const TwoPhotonSpectrum &x, int n) {
    switch (x.form()) {
        case TwoPhotonSpectrum::Form::Product: {
            Quadrature2D q = cartesian(pulse_rule(*x.factor_a(), n), pulse_rule(*x.factor_b(), n));
            q.symmetric_ = x.symmetric();
            return q;
        }
        case TwoPhotonSpectrum::Form::Koshino:
            return rotated(tan_gauss_legendre(n, 0.0, 1.0 / x.koshino_T2()),
                           tan_gauss_legendre(n, 0.0, 1.0 / x.koshino_T1()));
        case TwoPhotonSpectrum::Form::Sampled: {
            const FrequencyGrid &g = *x.grid();
            QuadRule r;
            r.nodes = g.nodes();
            r.weights.assign(r.nodes.size(), g.spacing());
            r.weights.front() *= 0.5;
            r.weights.back() *= 0.5;
            Quadrature2D q = cartesian(r, r);
            q.symmetric_ = x.symmetric();
            return q;
        }
    }
    throw Error(ErrorKind::UnsupportedForm, "unknown spectrum form");
}

cplx Quadrature2D::inner(const std::function<cplx(double, double)> &f,
                         const std::function<cplx(double, double)> &h) const {
    const int na = static_cast<int>(a_.nodes.size());
    const int nb = static_cast<int>(b_.nodes.size());
    const bool tri = symmetric_ && !rotated_ && na == nb;
    std::vector<cplx> rows(na);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < na; ++i) {
        cplx acc(0.0, 0.0);
        for (int j = tri ? i : 0; j < nb; ++j) {
            double x = a_.nodes[i];
            double y = b_.nodes[j];
            double w = a_.weights[i] * b_.weights[j];
            if (rotated_) {
                const double s = x;
                const double d = y;
                x = 0.5 * (s + d);
                y = 0.5 * (s - d);
                w *= 0.5;
            }
            if (tri && j != i) w *= 2.0;
            acc += w * std::conj(f(x, y)) * h(x, y);
        }
        rows[i] = acc;
    }
    cplx total(0.0, 0.0);
    for (const cplx &r : rows) total += r;
    return total;
}

double Quadrature2D::norm(const std::function<cplx(double, double)> &f) const { return inner(f, f).real(); }

double Quadrature2D::l2_distance(const std::function<cplx(double, double)> &f,
                                 const std::function<cplx(double, double)> &h) const {
    auto diff = [&](double x, double y) { return f(x, y) - h(x, y); };
    return std::sqrt(std::max(0.0, norm(diff)));
}

const char *ideal_name(IdealConvention c) { return c == IdealConvention::Input ? "input" : "time_reversed"; }

OnePhotonPulse ideal_pulse(const OnePhotonPulse &input, IdealConvention c) {
    return c == IdealConvention::Input ? input : time_reverse(input);
}

TwoPhotonSpectrum ideal_spectrum(const TwoPhotonSpectrum &input, IdealConvention c) {
    return c == IdealConvention::Input ? input : input.time_reversed();
}

namespace {

void check_norm(double n, double tol, const char *what) {
    if (std::abs(n - 1.0) > tol) {
        std::ostringstream msg;
        msg << what << " norm " << n << " deviates from 1 by more than " << tol;
        throw Error(ErrorKind::NormViolation, msg.str());
    }
}

}  // namespace

OverlapResult overlap1(const OnePhotonPulse &ideal, const OnePhotonPulse &out) {
    check_norm(ideal.norm(), 1e-6, "ideal pulse");
    check_norm(out.norm(), 1e-6, "output pulse");
    if (ideal.shift() == out.shift()) {
        return OverlapResult(rational_integrate(ideal.rational().conj() * out.rational()));
    }
    const QuadRule r = pulse_rule(ideal, 400);
    cplx c(0.0, 0.0);
    for (size_t k = 0; k < r.nodes.size(); ++k) c += r.weights[k] * std::conj(ideal(r.nodes[k])) * out(r.nodes[k]);
    return OverlapResult(c);
}

OverlapResult overlap2(const TwoPhotonSpectrum &ideal, const TwoPhotonOutput &out, const Overlap2Options &opt) {
    check_norm(ideal.norm(), opt.norm_tol, "ideal spectrum");
    Quadrature2D q = Quadrature2D::for_spectrum(ideal, opt.nodes);
    q.set_symmetric(ideal.symmetric() && out.symmetric());
    auto fi = [&ideal](double a, double b) { return ideal(a, b); };
    auto fo = [&out](double a, double b) { return out(a, b); };
    if (opt.check_output_norm) check_norm(q.norm(fo), opt.output_norm_tol, "output spectrum");
    return OverlapResult(q.inner(fi, fo));
}

GateFidelityResult gate_fidelity(cplx c1, cplx c2) {
    GateFidelityResult r;
    r.c1 = c1;
    r.c2 = c2;
    double ph = std::remainder(std::arg(c2) - 2.0 * std::arg(c1), 2.0 * kPi);
    if (ph <= -kPi) ph += 2.0 * kPi;
    r.conditional_phase = ph;
    const cplx z = 1.0 + 2.0 * std::abs(c1) - std::abs(c2) * std::polar(1.0, ph);
    r.f_gate = std::norm(z) / 16.0;
    return r;
}

}  // namespace vcav
