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

#include "vcav/scatter2.hpp"

#include <algorithm>
#include <cmath>

namespace vcav {

const char *provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Exact: return "exact";
        case Provenance::BadCavity: return "bad_cavity";
        case Provenance::GoodCavity: return "good_cavity";
    }
    return "";
}

TwoPhotonOutput::TwoPhotonOutput(Evaluator f, Provenance prov, TwoPhotonSpectrum input, SystemParams params)
    : f_(std::move(f)),
      prov_(prov),
      input_(std::make_shared<const TwoPhotonSpectrum>(std::move(input))),
      params_(params) {}

std::vector<cplx> TwoPhotonOutput::sample(const FrequencyGrid &grid) const {
    const int n = grid.count();
    const std::vector<double> w = grid.nodes();
    std::vector<cplx> out(static_cast<size_t>(n) * n);
    const bool sym = symmetric();
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        for (int j = sym ? i : 0; j < n; ++j) out[static_cast<size_t>(i) * n + j] = f_(w[i], w[j]);
    }
    if (sym) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) out[static_cast<size_t>(i) * n + j] = out[static_cast<size_t>(j) * n + i];
        }
    }
    return out;
}

cplx limit_integral(const RationalSpectrum &f, double target) {
    return kPi * f(target) - kI * principal_value_integrate(f, target);
}

cplx limit_integral(const Rational &f, double target) {
    if (f.decay_order() < 1) throw Error(ErrorKind::DecayViolation, "integrand does not vanish at infinity");
    return limit_integral(f.partial_fractions(), target);
}

cplx limit_integral(const FrequencyGrid &grid, const std::vector<cplx> &f, double target) {
    const int n = grid.count();
    if (static_cast<int>(f.size()) != n) throw Error(ErrorKind::ConfigError, "sample count does not match grid");
    const double h = grid.spacing();
    const double a = grid.at(0);
    const double b = grid.at(n - 1);
    auto weight = [&](int j) { return (j == 0 || j == n - 1) ? 0.5 * h : h; };
    if (!(target > a && target < b)) {
        cplx pv(0.0, 0.0);
        for (int j = 0; j < n; ++j) pv += f[j] / (grid.at(j) - target) * weight(j);
        return -kI * pv;
    }
    const double u = (target - a) / h;
    const int k = std::min(static_cast<int>(u), n - 2);
    const double fr = u - k;
    const cplx ft = (1.0 - fr) * f[k] + fr * f[k + 1];
    cplx pv = ft * std::log((b - target) / (target - a));
    for (int j = 0; j < n; ++j) {
        const double dx = grid.at(j) - target;
        cplx term;
        if (std::abs(dx) < 1e-12 * h) {
            const int lo = std::max(j - 1, 0);
            const int hi = std::min(j + 1, n - 1);
            term = (f[hi] - f[lo]) / ((hi - lo) * h);
        } else {
            term = (f[j] - ft) / dx;
        }
        pv += term * weight(j);
    }
    return kPi * ft - kI * pv;
}

namespace {

struct SliceIntegrals {
    cplx la;
    cplx lb;
    cplx extra;  // int f(x) * (-i)/(x - c) dx, when requested
};

// f is a decaying rational slice; c is a pole in the upper half-plane for the extra integral.
SliceIntegrals rational_slice(const Rational &f, double wa, double wb, double ref_scale, const cplx *c) {
    // Closing below: lim int f/(s + i(x - a)) = -2 pi sum_lower Res f/(x - a), and likewise for c.
    SliceIntegrals s;
    s.la = -2.0 * kPi * lower_residue_sum(f, wa, ref_scale);
    s.lb = wa == wb ? s.la : -2.0 * kPi * lower_residue_sum(f, wb, ref_scale);
    if (c != nullptr) s.extra = -2.0 * kPi * lower_residue_sum(f, *c, ref_scale);
    return s;
}

SliceIntegrals grid_slice(const FrequencyGrid &grid, const std::vector<cplx> &f, double wa, double wb,
                          const cplx *c) {
    SliceIntegrals s;
    s.la = limit_integral(grid, f, wa);
    s.lb = wa == wb ? s.la : limit_integral(grid, f, wb);
    if (c != nullptr) {
        const int n = grid.count();
        const double h = grid.spacing();
        cplx sum(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double w = (j == 0 || j == n - 1) ? 0.5 * h : h;
            sum += f[j] * (-kI) / (grid.at(j) - *c) * w;
        }
        s.extra = sum;
    }
    return s;
}

double response_linewidth(const SystemParams &p) {
    const auto [r1, r2] = kernel_P_roots(p);
    return std::min(std::abs(r1.imag()), std::abs(r2.imag()));
}

FrequencyGrid slice_grid(const TwoPhotonSpectrum &input, double linewidth, const ExactOptions &opt) {
    if (input.form() == TwoPhotonSpectrum::Form::Sampled) return *input.grid();
    const double half = opt.grid_half_extent > 0.0 ? opt.grid_half_extent
                                                    : 30.0 * std::max(linewidth, input.width());
    int n = opt.grid_count;
    if (n % 2 == 0) ++n;
    return FrequencyGrid(input.center(), half, n);
}

void require_symmetric(const TwoPhotonSpectrum &input) {
    if (!input.symmetric()) {
        throw Error(ErrorKind::AsymmetricInput, "two-photon map requires a symmetric input spectrum");
    }
}

}  // namespace

TwoPhotonOutput exact(const TwoPhotonSpectrum &input, const SystemParams &p, const ExactOptions &opt) {
    require_symmetric(input);
    const auto [r1, r2] = kernel_P_roots(p);
    const double g2 = p.g * p.g;
    const double kap = p.kappa;
    const double ref = p.scale();
    const double lin_coef = 2.0 * g2 * kap;
    const double lim_coef = 2.0 * g2 * g2 * kap * kap / kPi;
    const double six_coef = 2.0 * g2 * g2 * g2 * kap * kap / kPi;
    const bool outc = opt.outcoupling;
    const SystemParams params = p;

    // Everything except the two slice integrals and the input value.
    auto combine = [=](double wa, double wb, cplx xi, const SliceIntegrals &s) {
        const double E = wa + wb;
        const cplx Ka = kernel_K(wa, params), Kb = kernel_K(wb, params);
        const cplx Pa = kernel_P(wa, params), Pb = kernel_P(wb, params);
        cplx v = xi * (1.0 - lin_coef * (1.0 / (Ka * Pa) + 1.0 / (Kb * Pb)));
        v += lim_coef / (Ka * Kb) * (std::conj(Ka) / Pa * s.la + std::conj(Kb) / Pb * s.lb);
        const cplx common = 2.0 * g2 + cplx(kap, -(E + params.delta)) * cplx(2.0 * kap, -E);
        v -= six_coef * (std::conj(Ka) + std::conj(Kb)) / (Ka * Kb) / common * (1.0 / Pa + 1.0 / Pb) * s.extra;
        if (outc) v *= (Ka * Kb) / (std::conj(Ka) * std::conj(Kb));
        return v;
    };

    if (input.rational() && !opt.force_grid) {
        const double T = input.shift();
        TwoPhotonOutput::Evaluator f = [=](double wa, double wb) {
            const double E = wa + wb;
            const Rational slice = input.anti_diagonal(E) * Rational(kI, {}, {cplx(0.0, -kap)}) *
                                   Rational(-1.0, {}, {E - r1, E - r2});
            const cplx c(E, kap);
            const SliceIntegrals s = rational_slice(slice, wa, wb, ref, &c);
            cplx v = combine(wa, wb, input.unshifted(wa, wb), s);
            if (T != 0.0) v *= std::polar(1.0, E * T);
            return v;
        };
        return TwoPhotonOutput(std::move(f), Provenance::Exact, input, p);
    }

    const FrequencyGrid grid = slice_grid(input, response_linewidth(p), opt);
    TwoPhotonOutput::Evaluator f = [=](double wa, double wb) {
        const double E = wa + wb;
        const int n = grid.count();
        std::vector<cplx> vals(n);
        for (int j = 0; j < n; ++j) {
            const double x = grid.at(j);
            vals[j] = input(E - x, x) / (std::conj(kernel_K(x, params)) * kernel_P(E - x, params));
        }
        const cplx c(E, kap);
        const SliceIntegrals s = grid_slice(grid, vals, wa, wb, &c);
        return combine(wa, wb, input(wa, wb), s);
    };
    return TwoPhotonOutput(std::move(f), Provenance::Exact, input, p);
}

namespace {

// Shared evaluator of the reduced map with linewidth gw and detuning dw, frequencies measured
// from origin w0.
TwoPhotonOutput::Evaluator reduced_map(const TwoPhotonSpectrum &input, double gw, double dw, double w0,
                                       double ref_scale, std::function<cplx(double, double)> outfactor) {
    const double T = input.rational() ? input.shift() : 0.0;
    const bool closed = input.rational();
    const FrequencyGrid grid = closed ? FrequencyGrid(0.0, 1.0, 3) : slice_grid(input, gw, ExactOptions{});
    return [=](double wa, double wb) {
        const double E = wa + wb;
        const double ea = wa - w0;
        const double eb = wb - w0;
        // Pole of 1/(gw + i(x' - E' - dw)) in original coordinates.
        const cplx pole(E - w0 + dw, gw);
        const cplx da = gw - kI * (ea + dw);
        const cplx db = gw - kI * (eb + dw);
        SliceIntegrals s;
        cplx xi;
        if (closed) {
            const Rational slice = input.anti_diagonal(E) * Rational(-kI, {}, {pole});
            s = rational_slice(slice, wa, wb, ref_scale, nullptr);
            xi = input.unshifted(wa, wb);
        } else {
            const int n = grid.count();
            std::vector<cplx> vals(n);
            for (int j = 0; j < n; ++j) {
                const double x = grid.at(j);
                vals[j] = input(E - x, x) * (-kI) / (x - pole);
            }
            s = grid_slice(grid, vals, wa, wb, nullptr);
            xi = input(wa, wb);
        }
        cplx v = xi * (1.0 - 2.0 * gw / da - 2.0 * gw / db);
        v += 2.0 * gw * gw / kPi * (s.lb / db + s.la / da);
        if (T != 0.0) v *= std::polar(1.0, E * T);
        if (outfactor) v *= outfactor(wa, wb);
        return v;
    };
}

}  // namespace

TwoPhotonOutput bad_cavity(const TwoPhotonSpectrum &input, double gamma, double delta) {
    require_symmetric(input);
    if (!(gamma > 0.0)) throw Error(ErrorKind::ConfigError, "gamma must be positive");
    const double ref = std::max(gamma, std::abs(delta));
    // g and kappa are not needed by the limit map; record a consistent pair with kappa >> g.
    const SystemParams rec(1.0, 1.0 / gamma, delta);
    return TwoPhotonOutput(reduced_map(input, gamma, delta, 0.0, ref, nullptr), Provenance::BadCavity, input, rec);
}

TwoPhotonOutput good_cavity(const TwoPhotonSpectrum &input, const SystemParams &p, int branch) {
    require_symmetric(input);
    if (p.kappa >= 2.0 * p.g) throw Error(ErrorKind::BadRegime, "good-cavity map needs kappa < 2g");
    if (branch != 1 && branch != -1) throw Error(ErrorKind::ConfigError, "branch must be +1 or -1");
    const double w0 = branch * p.g;
    const SystemParams params = p;
    auto outfactor = [params](double wa, double wb) {
        const cplx Ka = kernel_K(wa, params), Kb = kernel_K(wb, params);
        return (Ka * Kb) / (std::conj(Ka) * std::conj(Kb));
    };
    return TwoPhotonOutput(reduced_map(input, 0.5 * p.kappa, 0.5 * p.delta, w0, p.scale(), outfactor),
                           Provenance::GoodCavity, input, p);
}

std::pair<cplx, cplx> koshino_AB(double wa, double wb, double gamma, double T1) {
    const cplx den = cplx(gamma, -wa) * cplx(gamma, -wb);
    const double s = wa + wb;
    const double d = wa - wb;
    const cplx A = (kI * gamma * s - wa * wb - 3.0 * gamma * gamma) / den;
    const cplx B = 4.0 * gamma * gamma * T1 * (2.0 * gamma - kI * s - d * d * T1) /
                   (den * (1.0 + 2.0 * gamma * T1 - kI * s * T1));
    return {A, B};
}

cplx koshino_reduced_sum(double d, double gamma, double T1) {
    const double x = gamma * T1;
    const double g2 = gamma * gamma;
    const double num = -4.0 * g2 * (3.0 - 2.0 * x) + d * d * (1.0 + 2.0 * x - 16.0 * x * x);
    return num / ((1.0 + 2.0 * x) * (4.0 * g2 + d * d));
}

double koshino_reduced_residual(double gamma, double T1, double d_max, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = -d_max + 2.0 * d_max * i / (n - 1);
        worst = std::max(worst, std::abs(koshino_reduced_sum(d, gamma, T1) + 1.0));
    }
    return worst;
}

double koshino_fixed_point(double gamma) {
    if (!(gamma > 0.0)) throw Error(ErrorKind::ConfigError, "gamma must be positive");
    // With x = gamma T1, A + B = -1 requires the numerator to equal -(1 + 2x)(4 gamma^2 + d^2).
    // Constant term: 3 - 2x = 1 + 2x. Quadratic term: 1 + 2x - 16x^2 = -(1 + 2x).
    const double x = (3.0 - 1.0) / (2.0 + 2.0);
    const double quad = 1.0 + 2.0 * x - 16.0 * x * x + (1.0 + 2.0 * x);
    if (std::abs(quad) > 1e-12 || !(x > 0.0)) {
        throw Error(ErrorKind::NoSolution, "constant and quadratic coefficients have no common root");
    }
    return x / gamma;
}

}  // namespace vcav
