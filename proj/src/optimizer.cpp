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

#include "vcav/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "vcav/scatter1.hpp"
#include "vcav/scatter2.hpp"

namespace vcav {

const char *regime_name(Regime r) { return r == Regime::Good ? "good" : "bad"; }

double regime_linewidth(Regime r, const SystemParams &p) { return r == Regime::Good ? p.kappa : p.gamma(); }

double regime_resonance(Regime r, const SystemParams &p, int branch) {
    if (r == Regime::Bad) return 0.0;
    const double s = p.g * p.g - 0.25 * p.kappa * p.kappa;
    return s > 0.0 ? branch * std::sqrt(s) : 0.0;
}

SweepPoint evaluate_point(const SystemParams &p, PulseFamily family, double omega0, double sigma,
                          const EvalOptions &opt) {
    SweepPoint pt;
    pt.params = p;
    pt.family = family;
    pt.omega0 = omega0;
    pt.sigma = sigma;
    const OnePhotonPulse in = family == PulseFamily::Lorentzian ? lorentzian(omega0, sigma) : full_excitation_pulse(p);
    const OnePhotonPulse out1 = apply(in, p);
    if (family == PulseFamily::Lorentzian) {
        pt.c1 = lorentzian_overlap_closed_form(omega0, sigma, p).amplitude;
    } else {
        pt.c1 = overlap1(in, out1).amplitude;
    }
    if (opt.time_reversed) {
        pt.has_time_reversed = true;
        pt.c1_tr = overlap1(time_reverse(in), out1).amplitude;
    }
    if (opt.two_photon) {
        const TwoPhotonSpectrum in2 = product_state(in, in);
        const TwoPhotonOutput out2 = exact(in2, p);
        Overlap2Options o;
        o.nodes = opt.nodes;
        pt.c2 = overlap2(in2, out2, o).amplitude;
        if (opt.time_reversed) pt.c2_tr = overlap2(in2.time_reversed(), out2, o).amplitude;
        pt.f_gate = gate_fidelity(pt.c1, pt.c2).f_gate;
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        pt.c2 = cplx(nan, nan);
        pt.c2_tr = cplx(nan, nan);
        pt.f_gate = nan;
    }
    return pt;
}

namespace {

SweepPoint failed_point(const SystemParams &p, PulseFamily family, double omega0, double sigma, const std::string &e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    SweepPoint pt;
    pt.params = p;
    pt.family = family;
    pt.omega0 = omega0;
    pt.sigma = sigma;
    pt.c1 = pt.c2 = pt.c1_tr = pt.c2_tr = cplx(nan, nan);
    pt.f_gate = nan;
    pt.error = e;
    return pt;
}

SweepPoint guarded_eval(const SystemParams &p, PulseFamily family, double omega0, double sigma, double r,
                        const EvalOptions &opt) {
    SweepPoint pt;
    try {
        pt = evaluate_point(p, family, omega0, sigma, opt);
    } catch (const std::exception &e) {
        pt = failed_point(p, family, omega0, sigma, e.what());
    }
    pt.r = r;
    return pt;
}

}  // namespace

std::vector<SweepPoint> sweep(const SweepSpec &spec) {
    for (const auto *v : {&spec.kappa_over_g, &spec.r, &spec.omega0, &spec.delta}) {
        if (v->empty()) throw Error(ErrorKind::ConfigError, "sweep axis is empty");
    }
    const size_t nk = spec.kappa_over_g.size(), nr = spec.r.size(), nw = spec.omega0.size(), nd = spec.delta.size();
    const size_t total = nk * nr * nw * nd;
    std::vector<SweepPoint> out(total);
#pragma omp parallel for schedule(dynamic)
    for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
        size_t rem = static_cast<size_t>(idx);
        const size_t id = rem % nd;
        rem /= nd;
        const size_t iw = rem % nw;
        rem /= nw;
        const size_t ir = rem % nr;
        const size_t ik = rem / nr;
        const double kappa = spec.kappa_over_g[ik] * spec.g;
        const double delta = spec.delta[id];
        SweepPoint pt;
        try {
            const SystemParams p(spec.g, kappa, delta);
            const double sigma = spec.r[ir] * regime_linewidth(spec.regime, p);
            const double w0 = spec.omega0[iw] + (spec.omega0_relative ? regime_resonance(spec.regime, p, spec.branch) : 0.0);
            pt = guarded_eval(p, spec.family, w0, sigma, spec.r[ir], spec.eval);
        } catch (const std::exception &e) {
            pt = failed_point(SystemParams(), spec.family, 0.0, 0.0, e.what());
            pt.r = spec.r[ir];
        }
        out[static_cast<size_t>(idx)] = pt;
    }
    return out;
}

namespace {

struct Axis {
    Interval range;
    bool log_scale = false;
    double at(double u) const {
        u = std::clamp(u, 0.0, 1.0);
        if (log_scale) return range.lo * std::pow(range.hi / range.lo, u);
        return range.lo + (range.hi - range.lo) * u;
    }
};

class Objective {
  public:
    Objective(const OptimizeBounds &b) : b_(b) {
        auto add = [&](Interval iv, int slot, bool allow_log) {
            if (iv.hi < iv.lo) throw Error(ErrorKind::ConfigError, "interval bounds are reversed");
            if (iv.fixed()) return;
            Axis a{iv, allow_log && iv.lo > 0.0 && iv.hi / iv.lo > 4.0};
            axes_.push_back(a);
            slots_.push_back(slot);
        };
        if (!(b.kappa_over_g.lo > 0.0)) throw Error(ErrorKind::ConfigError, "kappa/g must be positive");
        if (!(b.r.lo > 0.0)) throw Error(ErrorKind::ConfigError, "r must be positive");
        add(b.kappa_over_g, 0, true);
        add(b.r, 1, true);
        add(b.omega0_offset, 2, false);
        add(b.delta, 3, false);
    }

    size_t dim() const { return axes_.size(); }

    SweepPoint point(const std::vector<double> &u, int nodes) const {
        double v[4] = {b_.kappa_over_g.lo, b_.r.lo, b_.omega0_offset.lo, b_.delta.lo};
        for (size_t k = 0; k < axes_.size(); ++k) v[slots_[k]] = axes_[k].at(u[k]);
        const SystemParams base(1.0, v[0], 0.0);
        const double lw = regime_linewidth(b_.regime, base);
        const SystemParams p(1.0, v[0], v[3] * lw);
        const double sigma = v[1] * lw;
        const double w0 = regime_resonance(b_.regime, p, b_.branch) + v[2] * lw;
        EvalOptions opt;
        opt.nodes = nodes;
        return guarded_eval(p, PulseFamily::Lorentzian, w0, sigma, v[1], opt);
    }

  private:
    OptimizeBounds b_;
    std::vector<Axis> axes_;
    std::vector<int> slots_;
};

double score(const SweepPoint &p) { return std::isfinite(p.f_gate) ? p.f_gate : -1.0; }

}  // namespace

Optimum maximize_gate_fidelity(const OptimizeBounds &bounds, const OptimizeOptions &opt) {
    const Objective obj(bounds);
    const size_t d = obj.dim();
    Optimum res;
    res.bounds = bounds;
    if (d == 0) {
        res.best = obj.point({}, opt.nodes);
        res.evaluations = 1;
        res.converged = res.best.error.empty();
        res.history.push_back(res.best.f_gate);
        res.message = res.best.error;
        return res;
    }

    // Coarse multi-start grid at cell centres.
    const int m = std::max(1, opt.grid_per_axis);
    size_t count = 1;
    for (size_t k = 0; k < d; ++k) count *= static_cast<size_t>(m);
    std::vector<std::vector<double>> grid_u(count, std::vector<double>(d));
    for (size_t idx = 0; idx < count; ++idx) {
        size_t rem = idx;
        for (size_t k = d; k-- > 0;) {
            grid_u[idx][k] = (static_cast<double>(rem % m) + 0.5) / m;
            rem /= m;
        }
    }
    res.starts.resize(count);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        res.starts[static_cast<size_t>(i)] = obj.point(grid_u[static_cast<size_t>(i)], opt.coarse_nodes);
    }
    res.evaluations = static_cast<int>(count);

    std::vector<size_t> order(count);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return score(res.starts[a]) > score(res.starts[b]); });

    const int n_refine = std::min<int>(opt.refine_starts, static_cast<int>(count));
    const int budget = std::max(static_cast<int>(d) + 2, opt.max_evals / std::max(1, n_refine));
    double best_f = -2.0;
    bool any_converged = false;

    for (int s = 0; s < n_refine; ++s) {
        // Nelder-Mead on the unit cube with clamping.
        std::vector<std::vector<double>> simplex(d + 1, grid_u[order[s]]);
        const double step = 0.5 / m;
        for (size_t k = 0; k < d; ++k) {
            double &x = simplex[k + 1][k];
            x = x + step <= 1.0 ? x + step : x - step;
        }
        std::vector<SweepPoint> pts(d + 1);
        for (size_t k = 0; k <= d; ++k) pts[k] = obj.point(simplex[k], opt.nodes);
        int evals = static_cast<int>(d + 1);
        auto clamp = [](std::vector<double> x) {
            for (double &v : x) v = std::clamp(v, 0.0, 1.0);
            return x;
        };
        bool done = false;
        while (evals < budget) {
            std::vector<size_t> ix(d + 1);
            std::iota(ix.begin(), ix.end(), size_t{0});
            std::stable_sort(ix.begin(), ix.end(), [&](size_t a, size_t b) { return score(pts[a]) > score(pts[b]); });
            const double fbest = score(pts[ix.front()]);
            const double fworst = score(pts[ix.back()]);
            if (fbest > best_f) {
                best_f = fbest;
                res.best = pts[ix.front()];
            }
            res.history.push_back(best_f);
            if (fbest - fworst < opt.tol) {
                done = true;
                break;
            }
            std::vector<double> centroid(d, 0.0);
            for (size_t k = 0; k < d; ++k) {
                for (size_t v = 0; v < d; ++v) centroid[v] += simplex[ix[k]][v] / d;
            }
            const auto &worst = simplex[ix.back()];
            auto along = [&](double t) {
                std::vector<double> x(d);
                for (size_t v = 0; v < d; ++v) x[v] = centroid[v] + t * (centroid[v] - worst[v]);
                return clamp(x);
            };
            const auto xr = along(1.0);
            const SweepPoint pr = obj.point(xr, opt.nodes);
            ++evals;
            const double fsecond = score(pts[ix[d - 1]]);
            if (score(pr) > fbest) {
                const auto xe = along(2.0);
                const SweepPoint pe = obj.point(xe, opt.nodes);
                ++evals;
                if (score(pe) > score(pr)) {
                    simplex[ix.back()] = xe;
                    pts[ix.back()] = pe;
                } else {
                    simplex[ix.back()] = xr;
                    pts[ix.back()] = pr;
                }
                continue;
            }
            if (score(pr) > fsecond) {
                simplex[ix.back()] = xr;
                pts[ix.back()] = pr;
                continue;
            }
            const bool outside = score(pr) > fworst;
            const auto xc = along(outside ? 0.5 : -0.5);
            const SweepPoint pc = obj.point(xc, opt.nodes);
            ++evals;
            if (score(pc) > (outside ? score(pr) : fworst)) {
                simplex[ix.back()] = xc;
                pts[ix.back()] = pc;
                continue;
            }
            // Shrink towards the best vertex.
            const auto &xb = simplex[ix.front()];
            for (size_t k = 1; k <= d; ++k) {
                auto &x = simplex[ix[k]];
                for (size_t v = 0; v < d; ++v) x[v] = xb[v] + 0.5 * (x[v] - xb[v]);
                pts[ix[k]] = obj.point(x, opt.nodes);
                ++evals;
            }
        }
        for (const auto &p : pts) {
            if (score(p) > best_f) {
                best_f = score(p);
                res.best = p;
            }
        }
        res.evaluations += evals;
        any_converged = any_converged || done;
    }
    res.converged = any_converged;
    if (!any_converged) {
        std::ostringstream msg;
        msg << "NonConvergence: simplex did not reach tol " << opt.tol << " within " << opt.max_evals << " evaluations";
        res.message = msg.str();
    }
    return res;
}

Asymptote richardson(const std::vector<double> &anchors, const std::vector<double> &values, double exponent) {
    if (anchors.size() != values.size() || anchors.size() < 2) {
        throw Error(ErrorKind::ConfigError, "extrapolation needs at least two anchors with values");
    }
    Asymptote a;
    a.anchors = anchors;
    a.values = values;
    a.exponent = exponent;
    const size_t n = anchors.size();
    std::vector<double> h(n);
    for (size_t i = 0; i < n; ++i) h[i] = std::pow(anchors[i], exponent);
    // Neville evaluation at h = 0, also keeping the estimate from the first n-1 anchors.
    auto neville = [&](size_t m) {
        std::vector<double> t(values.begin(), values.begin() + static_cast<long>(m));
        for (size_t k = 1; k < m; ++k) {
            for (size_t i = 0; i + k < m; ++i) {
                t[i] = (h[i + k] * t[i] - h[i] * t[i + 1]) / (h[i + k] - h[i]);
            }
        }
        return t[0];
    };
    a.limit = neville(n);
    a.error_estimate = std::abs(a.limit - neville(n - 1));
    return a;
}

Asymptote bad_cavity_asymptote(const std::vector<double> &kappa_over_g, double r, int nodes) {
    std::vector<double> f(kappa_over_g.size());
    EvalOptions opt;
    opt.nodes = nodes;
    for (size_t i = 0; i < kappa_over_g.size(); ++i) {
        const SystemParams p(1.0, kappa_over_g[i], 0.0);
        f[i] = evaluate_point(p, PulseFamily::Lorentzian, 0.0, r * p.gamma(), opt).f_gate;
    }
    return richardson(kappa_over_g, f, -2.0);
}

}  // namespace vcav
