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

#include "vcav/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vcav/scatter1.hpp"

namespace vcav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Rates {
    double pre = kInf;   // amplitude decay rate towards t -> -inf
    double post = kInf;  // towards t -> +inf
    // Two poles with nearly equal rates give a t exp(-r t) tail.
    bool pre_degenerate = false;
    bool post_degenerate = false;
};

bool near(double a, double b) { return std::isfinite(a) && std::isfinite(b) && std::max(a, b) < 1.5 * std::min(a, b); }

Rates pulse_rates(const OnePhotonPulse &pulse) {
    Rates r;
    std::vector<double> up, down;
    for (const cplx &p : pulse.rational().poles()) (p.imag() > 0.0 ? up : down).push_back(std::abs(p.imag()));
    std::sort(up.begin(), up.end());
    std::sort(down.begin(), down.end());
    if (!up.empty()) r.pre = up[0];
    if (!down.empty()) r.post = down[0];
    r.pre_degenerate = up.size() > 1 && near(up[0], up[1]);
    r.post_degenerate = down.size() > 1 && near(down[0], down[1]);
    return r;
}

Rates response_rates(const SystemParams &p) {
    const auto [r1, r2] = kernel_P_roots(p);
    const double a = std::abs(r1.imag()), b = std::abs(r2.imag());
    Rates r;
    r.post = std::min(a, b);
    r.post_degenerate = near(a, b);
    return r;
}

OracleConfig size_window(const Rates &in, double center, const SystemParams &p, const OracleSizing &s) {
    if (s.count < 3 || s.count % 2 == 0) throw Error(ErrorKind::ConfigError, "oracle grid count must be odd and >= 3");
    if (!(s.tail_tol > 0.0 && s.tail_tol < 1.0)) throw Error(ErrorKind::ConfigError, "tail_tol must lie in (0, 1)");
    const double lt = 0.5 * std::log(1.0 / s.tail_tol);
    const double lt2 = lt + std::log(2.0 * lt);
    const Rates resp = response_rates(p);
    OracleConfig cfg;
    cfg.shift = std::isfinite(in.pre) ? 1.1 * (in.pre_degenerate ? lt2 : lt) / in.pre : 0.0;
    const double slow = std::min(in.post, resp.post);
    const double post = std::isfinite(in.post) ? (in.post_degenerate ? lt2 : lt) / in.post : 0.0;
    cfg.t_final = cfg.shift + std::max(post, (resp.post_degenerate ? lt2 : lt) / resp.post) + 2.0 / slow;
    double ext = s.max_half_extent > 0.0 ? s.max_half_extent : 30.0 * std::max(p.kappa, p.g);
    // Recurrence time 2 pi / spacing must cover the window.
    ext = std::min(ext, kPi * (s.count - 1) / cfg.t_final);
    cfg.grid = FrequencyGrid(center, ext, s.count);
    const double wmax = std::max(p.g, ext + std::abs(center) + std::abs(p.delta));
    const long steps = static_cast<long>(std::ceil(cfg.t_final / (s.dt_factor / wmax)));
    cfg.dt = cfg.t_final / static_cast<double>(steps);
    cfg.record_every = static_cast<int>(std::max(1L, steps / 2000));
    return cfg;
}

}  // namespace

OracleConfig auto_config(const OnePhotonPulse &pulse, const SystemParams &p, const OracleSizing &s) {
    return size_window(pulse_rates(pulse), pulse.center(), p, s);
}

OracleConfig auto_config(const TwoPhotonSpectrum &input, const SystemParams &p, const OracleSizing &s) {
    if (input.form() != TwoPhotonSpectrum::Form::Product) {
        throw Error(ErrorKind::UnsupportedForm, "the oracle takes product inputs only");
    }
    const Rates a = pulse_rates(*input.factor_a());
    const Rates b = pulse_rates(*input.factor_b());
    Rates r;
    r.pre = std::min(a.pre, b.pre);
    r.post = std::min(a.post, b.post);
    r.pre_degenerate = a.pre_degenerate || b.pre_degenerate;
    r.post_degenerate = a.post_degenerate || b.post_degenerate;
    const double c = 0.5 * (input.factor_a()->center() + input.factor_b()->center());
    return size_window(r, c, p, s);
}

OracleSizing two_photon_sizing(const SystemParams &p) {
    OracleSizing s;
    s.count = 301;
    s.max_half_extent = 20.0 * std::max(p.kappa, p.g);
    s.tail_tol = 1e-6;
    return s;
}

double OracleState1::norm() const {
    double n = 0.0;
    for (const cplx &x : xi) n += std::norm(x);
    return n * grid.spacing() + std::norm(c_e);
}

double OracleState2::norm() const {
    const double d = grid.spacing();
    double n2 = 0.0;
    for (const cplx &x : xi_ab) n2 += std::norm(x);
    double n1 = 0.0;
    for (const cplx &x : xi_a) n1 += std::norm(x);
    for (const cplx &x : xi_b) n1 += std::norm(x);
    return n2 * d * d + n1 * d;
}

TwoPhotonSpectrum OracleRun2::output_spectrum() const { return TwoPhotonSpectrum::sampled(config.grid, output); }

namespace {

void validate(const OracleConfig &cfg) {
    const double recurrence = 2.0 * kPi / cfg.grid.spacing();
    if (!(cfg.dt > 0.0) || !(cfg.t_final > 0.0)) throw Error(ErrorKind::ConfigError, "oracle needs dt > 0 and t_final > 0");
    if (cfg.t_final > recurrence * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "t_final " << cfg.t_final << " exceeds the grid recurrence time " << recurrence;
        throw Error(ErrorKind::ConfigError, msg.str());
    }
}

void check_step(const OracleConfig &cfg, const SystemParams &p) {
    const double wmax = std::max(p.g, cfg.grid.half_extent() + std::abs(cfg.grid.center()) + std::abs(p.delta));
    if (cfg.dt * wmax > 0.5) {
        std::ostringstream msg;
        msg << "dt " << cfg.dt << " too coarse for the largest frequency " << wmax;
        throw Error(ErrorKind::ConfigError, msg.str());
    }
}

// Norm of the periodic time profile on [T - L/2, 0], relative to the total.
double pre_tail_fraction(const FrequencyGrid &grid, const std::vector<cplx> &xi, double T) {
    const double L = 2.0 * kPi / grid.spacing();
    const double t0 = T - 0.5 * L;
    if (t0 >= 0.0) return 0.0;
    const double wmax = grid.half_extent() + std::abs(grid.center());
    const int m = std::max(8, static_cast<int>(std::ceil(-t0 / (kPi / (4.0 * wmax)))));
    const double h = -t0 / m;
    const int n = grid.count();
    const double d = grid.spacing();
    double total = 0.0;
    for (const cplx &x : xi) total += std::norm(x);
    total *= d;
    std::vector<double> w(static_cast<size_t>(m) + 1);
#pragma omp parallel for schedule(static)
    for (int k = 0; k <= m; ++k) {
        const double t = t0 + k * h;
        cplx f(0.0, 0.0);
        for (int i = 0; i < n; ++i) f += xi[i] * std::polar(1.0, -grid.at(i) * t);
        w[k] = std::norm(f) * d * d / (2.0 * kPi);
    }
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) acc += (k == 0 || k == m ? 0.5 : 1.0) * w[k];
    return acc * h / total;
}

// Phase factors exp(i (w_k + delta) t) advanced by multiplication, refreshed exactly now and then.
class Phases {
  public:
    Phases(const FrequencyGrid &g, const SystemParams &p, double h) : n_(g.count()), w_(n_), half_(n_) {
        for (int k = 0; k < n_; ++k) {
            w_[k] = g.at(k) + p.delta;
            half_[k] = std::polar(1.0, 0.5 * w_[k] * h);
        }
    }
    void set(double t, std::vector<cplx> &out) const {
        out.resize(n_);
        for (int k = 0; k < n_; ++k) out[k] = std::polar(1.0, w_[k] * t);
    }
    void advance_half(const std::vector<cplx> &in, std::vector<cplx> &out) const {
        out.resize(n_);
        for (int k = 0; k < n_; ++k) out[k] = in[k] * half_[k];
    }

  private:
    int n_;
    std::vector<double> w_;
    std::vector<cplx> half_;
};

std::vector<cplx> coupling(const FrequencyGrid &g, const SystemParams &p) {
    std::vector<cplx> c(g.count());
    const double amp = p.g * std::sqrt(p.kappa / kPi);
    for (int k = 0; k < g.count(); ++k) c[k] = amp / cplx(p.kappa, g.at(k));
    return c;
}

// Classic RK4 on a flat complex state. rhs(phase, y, dy) with phase = exp(i (w + delta) t).
template <class Rhs, class Observe>
void integrate(std::vector<cplx> &y, const OracleConfig &cfg, const SystemParams &p, Rhs &&rhs, Observe &&observe) {
    const long steps = std::lround(cfg.t_final / cfg.dt);
    const double h = cfg.t_final / static_cast<double>(steps);
    const Phases ph(cfg.grid, p, h);
    const size_t n = y.size();
    std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);
    std::vector<cplx> e0, emid, e1;
    ph.set(0.0, e0);
    observe(0.0, y);
    for (long s = 0; s < steps; ++s) {
        const double t = s * h;
        if (s % 1000 == 0) ph.set(t, e0);
        ph.advance_half(e0, emid);
        ph.advance_half(emid, e1);
        rhs(e0, y, k1);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(emid, tmp, k2);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(emid, tmp, k3);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(e1, tmp, k4);
        for (size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        e0.swap(e1);
        const bool last = s + 1 == steps;
        if (last || (cfg.record_every > 0 && (s + 1) % cfg.record_every == 0)) observe(t + h, y);
    }
}

void check_drift(double drift, double tol) {
    if (drift > tol) {
        std::ostringstream msg;
        msg << "norm drifted by " << drift << " (tolerance " << tol << ")";
        throw Error(ErrorKind::NormDrift, msg.str());
    }
}

}  // namespace

OracleRun1 simulate_single(const OnePhotonPulse &pulse, const SystemParams &p, const OracleConfig &cfg) {
    validate(cfg);
    check_step(cfg, p);
    const FrequencyGrid &g = cfg.grid;
    const int n = g.count();
    const double d = g.spacing();
    const OnePhotonPulse in = time_shift(pulse, cfg.shift);

    OracleRun1 run;
    run.config = cfg;
    std::vector<cplx> y(n + 1);
    for (int k = 0; k < n; ++k) y[k] = in(g.at(k));
    y[n] = 0.0;
    run.pre_tail = pre_tail_fraction(g, std::vector<cplx>(y.begin(), y.begin() + n), in.shift());
    if (run.pre_tail > cfg.pre_tail_tol) {
        std::ostringstream msg;
        msg << "input has " << run.pre_tail << " of its norm at t < 0; increase the shift";
        throw Error(ErrorKind::ConfigError, msg.str());
    }
    const std::vector<cplx> c = coupling(g, p);

    auto state_norm = [&](const std::vector<cplx> &v) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += std::norm(v[k]);
        return s * d + std::norm(v[n]);
    };
    run.initial_norm = state_norm(y);

    auto rhs = [&](const std::vector<cplx> &e, const std::vector<cplx> &v, std::vector<cplx> &dv) {
        const cplx ce = v[n];
        cplx acc(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            const cplx a = c[k] * e[k];
            dv[k] = -kI * a * ce;
            acc += std::conj(a) * v[k];
        }
        dv[n] = -kI * d * acc;
    };
    auto observe = [&](double t, const std::vector<cplx> &v) {
        const double nrm = state_norm(v);
        const double ex = std::norm(v[n]);
        run.max_drift = std::max(run.max_drift, std::abs(nrm / run.initial_norm - 1.0));
        run.max_excited = std::max(run.max_excited, ex / run.initial_norm);
        run.trajectory.push_back({t, ex, nrm});
    };
    integrate(y, cfg, p, rhs, observe);

    run.final_state.grid = g;
    run.final_state.xi.assign(y.begin(), y.begin() + n);
    run.final_state.c_e = y[n];
    run.final_state.t = cfg.t_final;
    run.output.resize(n);
    for (int k = 0; k < n; ++k) {
        const double w = g.at(k);
        run.output[k] = outcoupling_factor(w, p) * std::polar(1.0, -w * cfg.shift) * y[k];
    }
    check_drift(run.max_drift, cfg.norm_tol);
    return run;
}

OracleRun2 simulate_two(const TwoPhotonSpectrum &input, const SystemParams &p, const OracleConfig &cfg) {
    if (input.form() != TwoPhotonSpectrum::Form::Product) {
        throw Error(ErrorKind::UnsupportedForm, "the oracle takes product inputs only");
    }
    validate(cfg);
    check_step(cfg, p);
    const FrequencyGrid &g = cfg.grid;
    const int n = g.count();
    if (n < 201) throw Error(ErrorKind::ConfigError, "two-photon oracle needs at least 201 nodes per axis");
    const double d = g.spacing();
    const OnePhotonPulse a = time_shift(*input.factor_a(), cfg.shift);
    const OnePhotonPulse b = time_shift(*input.factor_b(), cfg.shift);

    OracleRun2 run;
    run.config = cfg;
    std::vector<cplx> fa(n), fb(n);
    for (int k = 0; k < n; ++k) {
        fa[k] = a(g.at(k));
        fb[k] = b(g.at(k));
    }
    run.pre_tail = pre_tail_fraction(g, fa, a.shift()) + pre_tail_fraction(g, fb, b.shift());
    if (run.pre_tail > cfg.pre_tail_tol) {
        std::ostringstream msg;
        msg << "input has " << run.pre_tail << " of its norm at t < 0; increase the shift";
        throw Error(ErrorKind::ConfigError, msg.str());
    }
    const size_t nn = static_cast<size_t>(n) * n;
    std::vector<cplx> y(nn + 2 * static_cast<size_t>(n), cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) y[static_cast<size_t>(i) * n + j] = fa[i] * fb[j];
    }
    const std::vector<cplx> c = coupling(g, p);

    auto state_norm = [&](const std::vector<cplx> &v) {
        double s2 = 0.0, s1 = 0.0;
        for (size_t k = 0; k < nn; ++k) s2 += std::norm(v[k]);
        for (size_t k = nn; k < v.size(); ++k) s1 += std::norm(v[k]);
        return s2 * d * d + s1 * d;
    };
    run.initial_norm = state_norm(y);

    std::vector<cplx> A(n);
    auto rhs = [&](const std::vector<cplx> &e, const std::vector<cplx> &v, std::vector<cplx> &dv) {
        for (int k = 0; k < n; ++k) A[k] = c[k] * e[k];
        const cplx *X = v.data();
        const cplx *ya = v.data() + nn;
        const cplx *yb = ya + n;
        cplx *dX = dv.data();
        cplx *dya = dv.data() + nn;
        cplx *dyb = dya + n;
        // xi_a is driven by the row sums, xi_b by the column sums, both weighted with conj(A).
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            const cplx *row = X + static_cast<size_t>(i) * n;
            cplx acc(0.0, 0.0);
            for (int j = 0; j < n; ++j) acc += row[j] * std::conj(A[j]);
            dya[i] = -kI * d * acc;
        }
        constexpr int kBlock = 16;
        const int nblocks = (n + kBlock - 1) / kBlock;
#pragma omp parallel for schedule(static)
        for (int bl = 0; bl < nblocks; ++bl) {
            const int j0 = bl * kBlock;
            const int j1 = std::min(n, j0 + kBlock);
            cplx acc[kBlock] = {};
            for (int i = 0; i < n; ++i) {
                const cplx w = std::conj(A[i]);
                const cplx *row = X + static_cast<size_t>(i) * n;
                for (int j = j0; j < j1; ++j) acc[j - j0] += row[j] * w;
            }
            for (int j = j0; j < j1; ++j) dyb[j] = -kI * d * acc[j - j0];
        }
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            cplx *out = dX + static_cast<size_t>(i) * n;
            const cplx ai = A[i];
            const cplx yai = ya[i];
            for (int j = 0; j < n; ++j) out[j] = -kI * (ai * yb[j] + A[j] * yai);
        }
    };
    auto observe = [&](double t, const std::vector<cplx> &v) {
        const double nrm = state_norm(v);
        double ex = 0.0;
        for (size_t k = nn; k < v.size(); ++k) ex += std::norm(v[k]);
        ex *= d;
        run.max_drift = std::max(run.max_drift, std::abs(nrm / run.initial_norm - 1.0));
        run.trajectory.push_back({t, ex, nrm});
    };
    integrate(y, cfg, p, rhs, observe);

    run.final_state.grid = g;
    run.final_state.xi_ab.assign(y.begin(), y.begin() + static_cast<long>(nn));
    run.final_state.xi_a.assign(y.begin() + static_cast<long>(nn), y.begin() + static_cast<long>(nn) + n);
    run.final_state.xi_b.assign(y.begin() + static_cast<long>(nn) + n, y.end());
    run.final_state.t = cfg.t_final;
    std::vector<cplx> f(n);
    for (int k = 0; k < n; ++k) {
        const double w = g.at(k);
        f[k] = outcoupling_factor(w, p) * std::polar(1.0, -w * cfg.shift);
    }
    run.output.resize(nn);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const size_t k = static_cast<size_t>(i) * n + j;
            run.output[k] = f[i] * f[j] * y[k];
        }
    }
    check_drift(run.max_drift, cfg.norm_tol);
    return run;
}

double grid_distance(const FrequencyGrid &grid, const std::vector<cplx> &values,
                     const std::function<cplx(double)> &reference) {
    if (values.size() != static_cast<size_t>(grid.count())) throw Error(ErrorKind::ConfigError, "grid size mismatch");
    double s = 0.0;
    for (int k = 0; k < grid.count(); ++k) s += std::norm(values[k] - reference(grid.at(k)));
    return std::sqrt(s * grid.spacing());
}

double grid_distance(const FrequencyGrid &grid, const std::vector<cplx> &values,
                     const std::function<cplx(double, double)> &reference) {
    const int n = grid.count();
    if (values.size() != static_cast<size_t>(n) * n) throw Error(ErrorKind::ConfigError, "grid size mismatch");
    std::vector<double> rows(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += std::norm(values[static_cast<size_t>(i) * n + j] - reference(grid.at(i), grid.at(j)));
        rows[i] = s;
    }
    double s = 0.0;
    for (double r : rows) s += r;
    return std::sqrt(s) * grid.spacing();
}

namespace {

double vec_distance(const std::vector<cplx> &a, const std::vector<cplx> &b, double d) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += std::norm(a[k] - b[k]);
    return std::sqrt(s * d);
}

}  // namespace

ConvergenceReport dt_convergence(const OnePhotonPulse &pulse, const SystemParams &p, const OracleConfig &cfg) {
    ConvergenceReport rep;
    rep.quantity = "dt";
    std::vector<std::vector<cplx>> outs;
    for (int k = 0; k < 3; ++k) {
        OracleConfig c = cfg;
        c.dt = cfg.dt / std::pow(2.0, k);
        c.record_every = 0;
        outs.push_back(simulate_single(pulse, p, c).output);
        rep.steps.push_back(c.dt);
    }
    const double d = cfg.grid.spacing();
    rep.distances = {vec_distance(outs[0], outs[1], d), vec_distance(outs[1], outs[2], d)};
    rep.observed_order = std::log2(rep.distances[0] / rep.distances[1]);
    const double ratio = std::pow(2.0, rep.observed_order);
    rep.error_estimate = ratio > 1.0 ? rep.distances[1] / (ratio - 1.0) : rep.distances[1];
    return rep;
}

ConvergenceReport grid_convergence(const OnePhotonPulse &pulse, const SystemParams &p, const OracleConfig &cfg) {
    ConvergenceReport rep;
    rep.quantity = "grid";
    const OnePhotonPulse ref = apply(pulse, p);
    auto reference = [&ref](double w) { return ref(w); };
    int count = cfg.grid.count();
    double ext = cfg.grid.half_extent();
    // Refinement keeps the spacing, so the recurrence time is unchanged and the window grows.
    for (int k = 0; k < 2; ++k) {
        OracleConfig c = cfg;
        c.grid = FrequencyGrid(cfg.grid.center(), ext, count);
        const double wmax = std::max(p.g, ext + std::abs(c.grid.center()) + std::abs(p.delta));
        const long steps = static_cast<long>(std::ceil(c.t_final / std::min(cfg.dt, 0.1 / wmax)));
        c.dt = c.t_final / static_cast<double>(steps);
        c.record_every = 0;
        const OracleRun1 run = simulate_single(pulse, p, c);
        rep.steps.push_back(count);
        rep.distances.push_back(grid_distance(c.grid, run.output, reference));
        count = 2 * count - 1;
        ext *= 2.0;
    }
    rep.observed_order = std::log2(rep.distances[0] / rep.distances[1]);
    const double ratio = std::pow(2.0, rep.observed_order);
    rep.error_estimate = ratio > 1.0 ? rep.distances[1] / (ratio - 1.0) : rep.distances[1];
    return rep;
}

}  // namespace vcav
