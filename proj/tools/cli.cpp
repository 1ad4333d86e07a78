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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "descriptor.hpp"
#include "json.hpp"
#include "presets_data.hpp"
#include "vcav/fidelity.hpp"
#include "vcav/io.hpp"
#include "vcav/optimizer.hpp"
#include "vcav/oracle.hpp"
#include "vcav/scatter1.hpp"
#include "vcav/scatter2.hpp"

namespace vcav::cli {

using json = nlohmann::ordered_json;

UnitSystem::UnitSystem(const std::string &name, double g, double kappa, bool g_given, bool kappa_given)
    : name_(name), g_(g), kappa_(kappa) {
    if (!(g > 0.0) || !(kappa > 0.0)) throw Error(ErrorKind::ConfigError, "--g and --kappa must be positive");
    if (name == "g") {
        if (g_given && g != 1.0) throw Error(ErrorKind::ConfigError, "in g units --g is 1 by definition");
        g_ = 1.0;
    } else if (name == "kappa") {
        if (kappa_given && kappa != 1.0) throw Error(ErrorKind::ConfigError, "in kappa units --kappa is 1 by definition");
        kappa_ = 1.0;
    } else if (name == "gamma") {
        if (g_given && kappa_given) {
            if (std::abs(g * g / kappa - 1.0) > 1e-12) {
                throw Error(ErrorKind::ConfigError, "in gamma units g^2/kappa must equal 1");
            }
        } else if (g_given) {
            kappa_ = g * g;
        } else if (kappa_given) {
            g_ = std::sqrt(kappa);
        } else {
            g_ = kappa_ = 1.0;
        }
    } else {
        throw Error(ErrorKind::ConfigError, "unknown unit system '" + name + "' (use g, kappa or gamma)");
    }
}

SystemParams UnitSystem::params(double delta_user) const {
    return SystemParams(1.0, to_internal(kappa_), to_internal(delta_user));
}

std::vector<std::string> preset_names() {
    const json j = json::parse(kPresetsJson);
    std::vector<std::string> names;
    for (const auto &[k, v] : j.at("presets").items()) names.push_back(k);
    return names;
}

std::vector<std::string> preset_tokens(const std::string &name) {
    const json j = json::parse(kPresetsJson);
    const auto &p = j.at("presets");
    if (!p.contains(name)) throw Error(ErrorKind::ConfigError, "unknown preset '" + name + "'");
    return p.at(name).get<std::vector<std::string>>();
}

namespace {

const std::vector<std::string> kCommands{"scatter", "sweep", "optimize", "koshino", "oracle", "pulse"};

bool is_command(const std::string &s) { return std::find(kCommands.begin(), kCommands.end(), s) != kCommands.end(); }

struct Common {
    double g = 1.0;
    double kappa = 1.0;
    double delta = 0.0;
    std::string units = "g";
    std::string out;
    std::string format = "csv";
    int grid = 0;
    double window = 0.0;
    std::string preset;
    std::string config;
};

void add_common(CLI::App *app, Common &c) {
    app->add_option("--g", c.g, "atom-cavity coupling");
    app->add_option("--kappa", c.kappa, "cavity decay rate");
    app->add_option("--delta", c.delta, "cavity-atom detuning");
    app->add_option("--units", c.units, "frequency unit: g, kappa or gamma")->check(CLI::IsMember({"g", "kappa", "gamma"}));
    app->add_option("--out", c.out, "data file; a .json metadata sibling is written next to it");
    app->add_option("--format", c.format, "data format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--grid", c.grid, "grid points per axis (odd)");
    app->add_option("--window", c.window, "grid half extent");
    app->add_option("--preset", c.preset, "named preset");
    app->add_option("--config", c.config, "metadata file of an earlier run to repeat");
}

json cplx_json(cplx z) {
    return json{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}, {"arg", std::arg(z)}};
}

json params_json(const SystemParams &p) { return json{{"g", p.g}, {"kappa", p.kappa}, {"delta", p.delta}}; }

std::vector<double> parse_range(const std::string &s) {
    auto bad = [&]() -> std::vector<double> { throw Error(ErrorKind::ConfigError, "bad range '" + s + "'"); };
    auto to_d = [&](const std::string &x) {
        try {
            size_t pos = 0;
            const double v = std::stod(x, &pos);
            if (pos != x.size()) bad();
            return v;
        } catch (const std::logic_error &) {
            bad();
            return 0.0;
        }
    };
    std::vector<std::string> parts;
    std::string cur;
    const char sep = s.find(':') != std::string::npos ? ':' : ',';
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (sep == ',') {
        std::vector<double> v;
        for (const auto &p : parts) v.push_back(to_d(p));
        return v;
    }
    const bool log = parts.front() == "log";
    if (log) parts.erase(parts.begin());
    if (parts.size() != 3) return bad();
    const double a = to_d(parts[0]), b = to_d(parts[1]);
    const int n = static_cast<int>(to_d(parts[2]));
    if (n < 1 || (log && (a <= 0.0 || b <= 0.0))) return bad();
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) {
        const double u = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
        v[k] = log ? a * std::pow(b / a, u) : a + (b - a) * u;
    }
    return v;
}

Interval parse_interval(const std::string &s) {
    const auto c = s.find(':');
    try {
        if (c == std::string::npos) {
            const double v = std::stod(s);
            return {v, v};
        }
        return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
    } catch (const std::logic_error &) {
        throw Error(ErrorKind::ConfigError, "bad interval '" + s + "'");
    }
}

std::string csv_to_json(const std::string &csv) {
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    json cols = json::array();
    {
        std::istringstream hs(line);
        std::string c;
        while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    json rows = json::array();
    while (std::getline(is, line)) {
        json r = json::array();
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) r.push_back(std::stod(c));
        rows.push_back(std::move(r));
    }
    return json{{"columns", cols}, {"rows", rows}}.dump() + "\n";
}

class Emitter {
  public:
    Emitter(const Common &c, std::vector<std::string> args, std::ostream &out)
        : c_(c), args_(std::move(args)), out_(out) {}

    json base(const std::string &command, const UnitSystem *u, const SystemParams *p) const {
        json j;
        j["tool"] = "vcav";
        j["command"] = command;
        j["args"] = args_;
        if (u) {
            j["units"] = u->name();
            j["params"] = json{{"g", u->g_user()}, {"kappa", u->kappa_user()}, {"delta", c_.delta}};
        }
        if (p) j["internal_params"] = params_json(*p);
        return j;
    }

    // Writes data (CSV text, converted when --format json) to path with a metadata sibling.
    void file(const std::string &path, const std::string &csv, const json &meta) const {
        if (path.empty()) return;
        write_file(path, c_.format == "json" ? csv_to_json(csv) : csv);
        write_file(metadata_path(path), meta.dump(2) + "\n");
    }

    void data(const std::string &csv, const json &meta) const { file(c_.out, csv, meta); }

    // out.csv -> out.<tag>.csv
    std::string sibling(const std::string &tag) const {
        if (c_.out.empty()) return {};
        const auto dot = c_.out.find_last_of('.');
        const auto slash = c_.out.find_last_of('/');
        if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return c_.out + "." + tag;
        return c_.out.substr(0, dot) + "." + tag + c_.out.substr(dot);
    }

    void report(const json &j) const { out_ << j.dump(2) << "\n"; }

  private:
    const Common &c_;
    std::vector<std::string> args_;
    std::ostream &out_;
};

UnitSystem units_of(const CLI::App *app, const Common &c) {
    return UnitSystem(c.units, c.g, c.kappa, app->count("--g") > 0, app->count("--kappa") > 0);
}

double response_width(const SystemParams &p) {
    const auto [r1, r2] = kernel_P_roots(p);
    return std::min(std::abs(r1.imag()), std::abs(r2.imag()));
}

std::string spectrum1_csv(const FrequencyGrid &g, const UnitSystem &u, const std::function<cplx(double)> &f) {
    std::vector<double> w(g.count());
    std::vector<cplx> v(g.count());
    const double amp = 1.0 / std::sqrt(u.g_user());
    for (int k = 0; k < g.count(); ++k) {
        w[k] = u.from_internal(g.at(k));
        v[k] = amp * f(g.at(k));
    }
    std::ostringstream os;
    write_spectrum1_csv(os, w, v);
    return os.str();
}

std::string spectrum2_csv(const FrequencyGrid &g, const UnitSystem &u, const std::vector<cplx> &vals) {
    const FrequencyGrid gu(u.from_internal(g.center()), u.from_internal(g.half_extent()), g.count());
    std::vector<cplx> v(vals.size());
    for (size_t k = 0; k < vals.size(); ++k) v[k] = vals[k] / u.g_user();
    std::ostringstream os;
    write_spectrum2_csv(os, gu, v);
    return os.str();
}

std::vector<cplx> sample2(const FrequencyGrid &g, const std::function<cplx(double, double)> &f) {
    const int n = g.count();
    std::vector<cplx> v(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(i) * n + j] = f(g.at(i), g.at(j));
    }
    return v;
}

FrequencyGrid make_grid(const Common &c, const UnitSystem &u, double center, double default_half, int default_n) {
    const int n = c.grid > 0 ? c.grid : default_n;
    const double half = c.window > 0.0 ? u.to_internal(c.window) : default_half;
    return FrequencyGrid(center, half, n);
}

// ---------------------------------------------------------------------------------------------

struct PulseOpts {
    std::string input;
    bool time = false;
};

int cmd_pulse(const CLI::App *app, const Common &c, const PulseOpts &o, const Emitter &em) {
    const UnitSystem u = units_of(app, c);
    const SystemParams p = u.params(c.delta);
    const Expr e = parse_descriptor(o.input);
    json meta = em.base("pulse", &u, &p);
    meta["input"] = to_string(e);
    std::string csv;
    if (!is_two_photon(e)) {
        const OnePhotonPulse pulse = build_pulse(e, p, u.g_user());
        meta["label"] = pulse.label();
        meta["norm"] = pulse.norm();
        meta["center"] = u.from_internal(pulse.center());
        meta["width"] = u.from_internal(pulse.width());
        if (o.time) {
            const int n = c.grid > 0 ? c.grid : 401;
            const double half = c.window > 0.0 ? u.time_to_internal(c.window) : 12.0 / pulse.width();
            const FrequencyGrid tg(pulse.shift(), half, n);
            std::vector<double> t(n);
            std::vector<cplx> f(n);
            const double amp = std::sqrt(u.g_user());
            for (int k = 0; k < n; ++k) {
                t[k] = tg.at(k) / u.g_user();
                f[k] = amp * time_profile(pulse, tg.at(k));
            }
            std::ostringstream os;
            write_spectrum1_csv(os, t, f);
            csv = os.str();
            csv.replace(0, csv.find(','), "t");
        } else {
            const FrequencyGrid g = make_grid(c, u, pulse.center(), 10.0 * pulse.width(), 401);
            csv = spectrum1_csv(g, u, [&](double w) { return pulse(w); });
        }
    } else {
        const TwoPhotonSpectrum x = build_two_photon(e, p, u.g_user());
        meta["label"] = x.label();
        meta["norm"] = x.norm();
        if (o.time) throw Error(ErrorKind::ConfigError, "--time is available for one-photon pulses only");
        const FrequencyGrid g = make_grid(c, u, x.center(), 10.0 * x.width(), 101);
        csv = spectrum2_csv(g, u, sample2(g, [&](double a, double b) { return x(a, b); }));
    }
    em.data(csv, meta);
    em.report(meta);
    return kExitOk;
}

struct ScatterOpts {
    int photons = 0;
    std::string input;
    std::string ideal = "input";
    std::string map = "exact";
    int branch = 1;
    int nodes = 120;
};

int cmd_scatter(const CLI::App *app, const Common &c, const ScatterOpts &o, const Emitter &em) {
    const UnitSystem u = units_of(app, c);
    const SystemParams p = u.params(c.delta);
    const Expr e = parse_descriptor(o.input);
    const int photons = o.photons > 0 ? o.photons : (is_two_photon(e) ? 2 : 1);
    if ((photons == 2) != is_two_photon(e)) {
        throw Error(ErrorKind::ConfigError, "--photons " + std::to_string(photons) + " does not match the descriptor");
    }
    const IdealConvention conv = o.ideal == "input" ? IdealConvention::Input : IdealConvention::TimeReversed;
    json meta = em.base("scatter", &u, &p);
    meta["input"] = to_string(e);
    meta["photons"] = photons;
    meta["ideal"] = ideal_name(conv);
    std::string csv;
    if (photons == 1) {
        const OnePhotonPulse in = build_pulse(e, p, u.g_user());
        const OnePhotonPulse out = apply(in, p);
        const OverlapResult ov = overlap1(ideal_pulse(in, conv), out);
        meta["label"] = out.label();
        meta["input_norm"] = in.norm();
        meta["output_norm"] = out.norm();
        meta["overlap"] = ov.amplitude.real();
        meta["overlap_complex"] = cplx_json(ov.amplitude);
        meta["fidelity"] = ov.fidelity();
        const double half = 8.0 * std::max(in.width(), response_width(p));
        const FrequencyGrid g = make_grid(c, u, in.center(), half, 401);
        csv = spectrum1_csv(g, u, [&](double w) { return out(w); });
    } else {
        const TwoPhotonSpectrum in = build_two_photon(e, p, u.g_user());
        const TwoPhotonOutput out = o.map == "exact" ? exact(in, p)
                                    : o.map == "bad" ? bad_cavity(in, p.gamma(), p.delta)
                                                     : good_cavity(in, p, o.branch);
        Overlap2Options opt;
        opt.nodes = o.nodes;
        const OverlapResult ov = overlap2(ideal_spectrum(in, conv), out, opt);
        meta["provenance"] = provenance_name(out.provenance());
        meta["input_norm"] = in.norm();
        meta["overlap"] = ov.amplitude.real();
        meta["overlap_complex"] = cplx_json(ov.amplitude);
        meta["fidelity"] = ov.fidelity();
        if (in.form() == TwoPhotonSpectrum::Form::Product && in.symmetric()) {
            const OnePhotonPulse &a = *in.factor_a();
            const OverlapResult c1 = overlap1(ideal_pulse(a, conv), apply(a, p));
            const GateFidelityResult gf = gate_fidelity(c1.amplitude, ov.amplitude);
            meta["c1"] = cplx_json(c1.amplitude);
            meta["c2"] = cplx_json(ov.amplitude);
            meta["f_gate"] = gf.f_gate;
            meta["conditional_phase"] = gf.conditional_phase;
        }
        const double half = 8.0 * std::max(in.width(), response_width(p));
        const FrequencyGrid g = make_grid(c, u, in.center(), half, 201);
        csv = spectrum2_csv(g, u, sample2(g, [&](double a, double b) { return out(a, b); }));
    }
    em.data(csv, meta);
    em.report(meta);
    return kExitOk;
}

struct SweepOpts {
    std::string family = "lorentzian";
    std::string regime = "bad";
    std::string kappa_over_g = "20";
    std::string r = "0.8";
    std::string omega0 = "0";
    bool absolute_omega0 = false;
    std::string delta = "0";
    int branch = 1;
    bool time_reversed = false;
    bool one_photon = false;
    int nodes = 80;
};

int cmd_sweep(const CLI::App *app, const Common &c, const SweepOpts &o, const Emitter &em) {
    if (c.units != "g" || app->count("--g") || app->count("--kappa") || app->count("--delta")) {
        throw Error(ErrorKind::ConfigError, "sweeps take g units and set kappa and delta through their own ranges");
    }
    SweepSpec s;
    s.family = o.family == "sstar" ? PulseFamily::FullExcitation : PulseFamily::Lorentzian;
    s.regime = o.regime == "good" ? Regime::Good : Regime::Bad;
    s.kappa_over_g = parse_range(o.kappa_over_g);
    s.r = parse_range(o.r);
    s.omega0 = parse_range(o.omega0);
    s.omega0_relative = !o.absolute_omega0;
    s.delta = parse_range(o.delta);
    s.branch = o.branch;
    s.eval.nodes = o.nodes;
    s.eval.two_photon = !o.one_photon;
    s.eval.time_reversed = o.time_reversed;
    const std::vector<SweepPoint> pts = sweep(s);

    json meta = em.base("sweep", nullptr, nullptr);
    meta["family"] = o.family;
    meta["regime"] = o.regime;
    meta["count"] = pts.size();
    json arr = json::array();
    int failures = 0;
    for (const SweepPoint &pt : pts) {
        json j{{"kappa_over_g", pt.params.kappa / pt.params.g},
               {"r", pt.r},
               {"omega0", pt.omega0},
               {"delta", pt.params.delta},
               {"c1", cplx_json(pt.c1)}};
        if (s.eval.two_photon) {
            j["c2"] = cplx_json(pt.c2);
            j["f_gate"] = pt.f_gate;
        }
        if (pt.has_time_reversed) {
            j["c1_tr"] = cplx_json(pt.c1_tr);
            if (s.eval.two_photon) j["c2_tr"] = cplx_json(pt.c2_tr);
        }
        if (!pt.error.empty()) {
            j["error"] = pt.error;
            ++failures;
        }
        arr.push_back(std::move(j));
    }
    meta["failures"] = failures;
    std::ostringstream os;
    write_sweep_csv(os, pts);
    em.data(os.str(), meta);
    meta["points"] = std::move(arr);
    em.report(meta);
    return failures == static_cast<int>(pts.size()) && !pts.empty() ? kExitNumerical : kExitOk;
}

struct OptimizeOpts {
    std::string regime = "bad";
    std::string kappa_over_g;
    std::string r;
    std::string omega0 = "0";
    std::string delta = "0";
    int branch = 1;
    OptimizeOptions opt;
    std::string asymptote;
    double asymptote_r = 0.5483;
    bool no_search = false;
};

json point_json(const SweepPoint &pt, Regime regime, int branch) {
    const double lw = regime_linewidth(regime, pt.params);
    const double res = regime_resonance(regime, pt.params, branch);
    const GateFidelityResult gf = gate_fidelity(pt.c1, pt.c2);
    json j{{"kappa_over_g", pt.params.kappa / pt.params.g}, {"r", pt.r}};
    j[regime == Regime::Good ? "sigma_over_kappa" : "sigma_over_gamma"] = pt.sigma / lw;
    j["omega0"] = pt.omega0;
    j["resonance"] = res;
    j["delta"] = pt.params.delta;
    j["c1"] = cplx_json(pt.c1);
    j["c2"] = cplx_json(pt.c2);
    j["f_gate"] = pt.f_gate;
    j["conditional_phase"] = gf.conditional_phase;
    if (!pt.error.empty()) j["error"] = pt.error;
    return j;
}

int cmd_optimize(const CLI::App *app, const Common &c, const OptimizeOpts &o, const Emitter &em) {
    if (c.units != "g" || app->count("--g") || app->count("--kappa") || app->count("--delta")) {
        throw Error(ErrorKind::ConfigError, "optimize works in g units; set kappa and delta through the bounds");
    }
    OptimizeBounds b;
    b.regime = o.regime == "good" ? Regime::Good : Regime::Bad;
    b.branch = o.branch;
    b.kappa_over_g = parse_interval(!o.kappa_over_g.empty() ? o.kappa_over_g
                                                            : (b.regime == Regime::Good ? "0.02:0.5" : "10:200"));
    b.r = parse_interval(!o.r.empty() ? o.r : (b.regime == Regime::Good ? "0.1:1" : "0.1:2"));
    b.omega0_offset = parse_interval(o.omega0);
    b.delta = parse_interval(o.delta);
    if (b.regime == Regime::Good && b.kappa_over_g.hi >= 2.0) {
        throw Error(ErrorKind::BadRegime, "the good-cavity search needs kappa/g < 2");
    }

    json meta = em.base("optimize", nullptr, nullptr);
    meta["regime"] = o.regime;
    int code = kExitOk;
    std::string csv;
    if (!o.no_search) {
        const Optimum best = maximize_gate_fidelity(b, o.opt);
        meta["best"] = point_json(best.best, b.regime, b.branch);
        meta["evaluations"] = best.evaluations;
        meta["converged"] = best.converged;
        meta["message"] = best.message;
        meta["history"] = best.history;
        std::ostringstream os;
        write_sweep_csv(os, best.starts);
        csv = os.str();
        if (!best.best.error.empty()) code = kExitNumerical;
    }
    if (!o.asymptote.empty()) {
        const std::vector<double> anchors = parse_range(o.asymptote);
        const Asymptote a = bad_cavity_asymptote(anchors, o.asymptote_r, o.opt.nodes);
        meta["asymptote"] = json{{"r", o.asymptote_r},
                                 {"anchors", a.anchors},
                                 {"values", a.values},
                                 {"exponent", a.exponent},
                                 {"limit", a.limit},
                                 {"error_estimate", a.error_estimate}};
    }
    if (c.format == "json") {
        if (!c.out.empty()) {
            write_file(c.out, meta.dump(2) + "\n");
            write_file(metadata_path(c.out), meta.dump(2) + "\n");
        }
    } else {
        em.data(csv, meta);
    }
    em.report(meta);
    return code;
}

struct KoshinoOpts {
    double gamma = 1.0;
    double t2 = 200.0;
    double t1 = 0.0;
    double dmax = 10.0;
    int n = 2001;
    int nodes = 200;
};

int cmd_koshino(const CLI::App *app, const Common &c, const KoshinoOpts &o, const Emitter &em) {
    const UnitSystem u = units_of(app, c);
    const double gamma = u.to_internal(o.gamma);
    const double delta = u.to_internal(c.delta);
    if (!(gamma > 0.0)) throw Error(ErrorKind::ConfigError, "--gamma must be positive");
    const double x_fixed = koshino_fixed_point(gamma) * gamma;
    const double x = app->count("--t1") ? o.t1 : x_fixed;
    const double T1 = x / gamma;
    const double T2 = o.t2 / gamma;
    const double dmax = o.dmax * gamma;
    const double res = koshino_reduced_residual(gamma, T1, dmax, o.n);
    const double printed = -2.0;
    const double res_printed = koshino_reduced_residual(gamma, printed / gamma, dmax, o.n);

    const TwoPhotonSpectrum in = koshino_pulse(T1, T2);
    const TwoPhotonOutput out = bad_cavity(in, gamma, delta);
    const Quadrature2D q = Quadrature2D::for_spectrum(in, o.nodes);
    const double dist = q.l2_distance([&](double a, double b) { return out(a, b); },
                                      [&](double a, double b) { return -in(a, b); });

    json meta = em.base("koshino", &u, nullptr);
    meta["gamma"] = o.gamma;
    meta["gamma_T2"] = o.t2;
    meta["fixed_point_gamma_T1"] = x_fixed;
    meta["fixed_point_T1"] = x_fixed / gamma / u.g_user();
    meta["gamma_T1"] = x;
    meta["residual"] = res;
    meta["residual_window_over_gamma"] = o.dmax;
    meta["l2_distance_from_minus_input"] = dist;
    meta["printed_gamma_T1"] = printed;
    meta["printed_residual"] = res_printed;
    meta["printed_satisfies_identity"] = res_printed < 1e-10;
    std::ostringstream note;
    note << "T1 = -2/gamma does not make A + B = -1 (max residual " << res_printed
         << "); matching coefficients gives T1 = 1/(2 gamma), residual " << res << ".";
    meta["note"] = note.str();
    if (!c.out.empty()) {
        const FrequencyGrid g = make_grid(c, u, 0.0, 10.0 / T1, 101);
        em.data(spectrum2_csv(g, u, sample2(g, [&](double a, double b) { return out(a, b); })), meta);
    }
    em.report(meta);
    return kExitOk;
}

struct OracleOpts {
    int photons = 1;
    std::string input;
    bool report_inversion = false;
    bool convergence = false;
    double tail_tol = 0.0;
    double dt_factor = 0.1;
};

json config_json(const OracleConfig &cfg, const UnitSystem &u) {
    return json{{"count", cfg.grid.count()},
                {"center", u.from_internal(cfg.grid.center())},
                {"half_extent", u.from_internal(cfg.grid.half_extent())},
                {"dt", cfg.dt / u.g_user()},
                {"t_final", cfg.t_final / u.g_user()},
                {"shift", cfg.shift / u.g_user()}};
}

json convergence_json(const ConvergenceReport &r) {
    return json{{"quantity", r.quantity},
                {"steps", r.steps},
                {"distances", r.distances},
                {"observed_order", r.observed_order},
                {"error_estimate", r.error_estimate}};
}

int cmd_oracle(const CLI::App *app, const Common &c, const OracleOpts &o, const Emitter &em) {
    const UnitSystem u = units_of(app, c);
    const SystemParams p = u.params(c.delta);
    if (o.photons != 1 && o.photons != 2) throw Error(ErrorKind::ConfigError, "--photons must be 1 or 2");
    const std::string desc = !o.input.empty() ? o.input : (o.photons == 1 ? "sstar" : "product(sstar,sstar)");
    const Expr e = parse_descriptor(desc);
    OracleSizing s = o.photons == 1 ? OracleSizing{} : two_photon_sizing(p);
    if (c.grid > 0) s.count = c.grid;
    if (c.window > 0.0) s.max_half_extent = u.to_internal(c.window);
    if (o.tail_tol > 0.0) s.tail_tol = o.tail_tol;
    s.dt_factor = o.dt_factor;

    json meta = em.base("oracle", &u, &p);
    meta["input"] = to_string(e);
    meta["photons"] = o.photons;
    if (o.photons == 1) {
        const OnePhotonPulse in = build_pulse(e, p, u.g_user());
        const OracleConfig cfg = auto_config(in, p, s);
        const OracleRun1 run = simulate_single(in, p, cfg);
        const OnePhotonPulse ref = apply(in, p);
        const double dist = grid_distance(cfg.grid, run.output, [&](double w) { return ref(w); });
        meta["config"] = config_json(cfg, u);
        meta["l2_distance"] = dist;
        meta["max_norm_drift"] = run.max_drift;
        meta["pre_tail"] = run.pre_tail;
        meta["final_excited"] = std::norm(run.final_state.c_e);
        if (o.report_inversion) meta["max_excited"] = run.max_excited;
        if (o.convergence) {
            OracleConfig coarse = cfg;
            coarse.dt = 4.0 * cfg.dt;
            meta["dt_convergence"] = convergence_json(dt_convergence(in, p, coarse));
            meta["grid_convergence"] = convergence_json(grid_convergence(in, p, cfg));
        }
        std::vector<double> w(cfg.grid.count());
        std::vector<cplx> v(cfg.grid.count());
        for (int k = 0; k < cfg.grid.count(); ++k) {
            w[k] = u.from_internal(cfg.grid.at(k));
            v[k] = run.output[k] / std::sqrt(u.g_user());
        }
        std::ostringstream os;
        write_spectrum1_csv(os, w, v);
        em.data(os.str(), meta);
        em.file(em.sibling("analytic"), spectrum1_csv(cfg.grid, u, [&](double x) { return ref(x); }), meta);
        std::ostringstream tr;
        write_trajectory_csv(tr, run.trajectory);
        em.file(em.sibling("trajectory"), tr.str(), meta);
    } else {
        if (o.convergence) throw Error(ErrorKind::ConfigError, "the convergence study runs for one photon only");
        const TwoPhotonSpectrum in = build_two_photon(e, p, u.g_user());
        const OracleConfig cfg = auto_config(in, p, s);
        const OracleRun2 run = simulate_two(in, p, cfg);
        const TwoPhotonOutput ref = exact(in, p);
        const double dist = grid_distance(cfg.grid, run.output, [&](double a, double b) { return ref(a, b); });
        meta["config"] = config_json(cfg, u);
        meta["l2_distance"] = dist;
        meta["max_norm_drift"] = run.max_drift;
        meta["pre_tail"] = run.pre_tail;
        em.data(spectrum2_csv(cfg.grid, u, run.output), meta);
        em.file(em.sibling("analytic"),
                spectrum2_csv(cfg.grid, u, sample2(cfg.grid, [&](double a, double b) { return ref(a, b); })), meta);
        std::ostringstream tr;
        write_trajectory_csv(tr, run.trajectory);
        em.file(em.sibling("trajectory"), tr.str(), meta);
    }
    em.report(meta);
    return kExitOk;
}

// Pulls "--name value" or "--name=value" out of tokens.
std::string take_option(std::vector<std::string> &tokens, const std::string &name) {
    std::string value;
    for (size_t k = 0; k < tokens.size();) {
        if (tokens[k] == name && k + 1 < tokens.size()) {
            value = tokens[k + 1];
            tokens.erase(tokens.begin() + static_cast<long>(k), tokens.begin() + static_cast<long>(k) + 2);
        } else if (tokens[k].rfind(name + "=", 0) == 0) {
            value = tokens[k].substr(name.size() + 1);
            tokens.erase(tokens.begin() + static_cast<long>(k));
        } else {
            ++k;
        }
    }
    return value;
}

// Prepends stored tokens (a preset or an earlier run) to the user's tokens.
std::vector<std::string> merge(const std::vector<std::string> &stored, std::vector<std::string> user) {
    if (stored.empty() || !is_command(stored.front())) throw Error(ErrorKind::ConfigError, "stored arguments lack a command");
    if (!user.empty() && is_command(user.front())) {
        if (user.front() != stored.front()) {
            throw Error(ErrorKind::ConfigError, "preset is for '" + stored.front() + "', not '" + user.front() + "'");
        }
        user.erase(user.begin());
    }
    std::vector<std::string> all = stored;
    all.insert(all.end(), user.begin(), user.end());
    return all;
}

std::vector<std::string> expand(std::vector<std::string> tokens) {
    const std::string config = take_option(tokens, "--config");
    if (!config.empty()) {
        std::ifstream f(config);
        if (!f) throw Error(ErrorKind::ConfigError, "cannot read " + config);
        const json j = json::parse(f);
        tokens = merge(j.at("args").get<std::vector<std::string>>(), tokens);
    }
    const std::string preset = take_option(tokens, "--preset");
    if (!preset.empty()) tokens = merge(preset_tokens(preset), tokens);
    return tokens;
}

}  // namespace

int run(const std::vector<std::string> &raw, std::ostream &out, std::ostream &err) {
    CLI::App app{"Scattering of one- and two-photon pulses off a cavity with a V-type atom", "vcav"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    Common c;

    PulseOpts po;
    CLI::App *pulse = app.add_subcommand("pulse", "emit a pulse spectrum or time profile");
    pulse->add_option("--input", po.input, "pulse descriptor")->required();
    pulse->add_flag("--time", po.time, "emit the time profile instead of the spectrum");

    ScatterOpts so;
    CLI::App *scatter = app.add_subcommand("scatter", "scatter a one- or two-photon input");
    scatter->add_option("--photons", so.photons, "1 or 2 (default: from the descriptor)");
    scatter->add_option("--input", so.input, "pulse descriptor")->required();
    scatter->add_option("--ideal", so.ideal, "ideal for overlaps")->check(CLI::IsMember({"input", "time_reversed"}));
    scatter->add_option("--map", so.map, "two-photon map")->check(CLI::IsMember({"exact", "bad", "good"}));
    scatter->add_option("--branch", so.branch, "good-cavity line, 1 or -1");
    scatter->add_option("--nodes", so.nodes, "quadrature nodes per peak and axis");

    SweepOpts sw;
    CLI::App *sweep_cmd = app.add_subcommand("sweep", "overlaps and gate fidelity over a parameter grid");
    sweep_cmd->add_option("--family", sw.family, "input pulse family")->check(CLI::IsMember({"lorentzian", "sstar"}));
    sweep_cmd->add_option("--regime", sw.regime, "cavity regime")->check(CLI::IsMember({"good", "bad"}));
    sweep_cmd->add_option("--kappa-over-g", sw.kappa_over_g, "a:b:n, log:a:b:n or a,b,...");
    sweep_cmd->add_option("--r", sw.r, "pulse width over the regime linewidth");
    sweep_cmd->add_option("--omega0", sw.omega0, "carrier offset from the regime resonance (g units)");
    sweep_cmd->add_flag("--absolute-omega0", sw.absolute_omega0, "treat --omega0 as absolute");
    sweep_cmd->add_option("--sweep-delta", sw.delta, "detuning values (g units)");
    sweep_cmd->add_option("--branch", sw.branch, "good-cavity line, 1 or -1");
    sweep_cmd->add_flag("--time-reversed", sw.time_reversed, "also overlap with the time-reversed input");
    sweep_cmd->add_flag("--one-photon", sw.one_photon, "skip the two-photon overlap");
    sweep_cmd->add_option("--nodes", sw.nodes, "two-photon quadrature nodes per peak and axis");

    OptimizeOpts oo;
    CLI::App *opt = app.add_subcommand("optimize", "maximize the gate fidelity over Lorentzian inputs");
    opt->add_option("--regime", oo.regime, "cavity regime")->check(CLI::IsMember({"good", "bad"}));
    opt->add_option("--kappa-over-g", oo.kappa_over_g, "lo:hi or a fixed value");
    opt->add_option("--r", oo.r, "lo:hi or a fixed value");
    opt->add_option("--omega0", oo.omega0, "carrier offset from resonance, linewidth units");
    opt->add_option("--detuning", oo.delta, "detuning, linewidth units");
    opt->add_option("--branch", oo.branch, "good-cavity line, 1 or -1");
    opt->add_option("--tol", oo.opt.tol, "simplex convergence tolerance");
    opt->add_option("--max-evals", oo.opt.max_evals, "evaluation budget per simplex run");
    opt->add_option("--grid-per-axis", oo.opt.grid_per_axis, "coarse scan points per free axis");
    opt->add_option("--refine-starts", oo.opt.refine_starts, "best coarse points refined by the simplex");
    opt->add_option("--coarse-nodes", oo.opt.coarse_nodes, "quadrature nodes during the coarse scan");
    opt->add_option("--nodes", oo.opt.nodes, "quadrature nodes for the final evaluation");
    opt->add_option("--asymptote", oo.asymptote, "bad-cavity anchors kappa/g for extrapolation, e.g. 25,50,100");
    opt->add_option("--asymptote-r", oo.asymptote_r);
    opt->add_flag("--no-search", oo.no_search, "only compute the asymptote");

    KoshinoOpts ko;
    CLI::App *kosh = app.add_subcommand("koshino", "check the entangled fixed-point input of the bad-cavity map");
    kosh->add_option("--gamma", ko.gamma, "effective atomic linewidth g^2/kappa");
    kosh->add_option("--t2", ko.t2, "gamma T2");
    kosh->add_option("--t1", ko.t1, "gamma T1 (default: the fixed point)");
    kosh->add_option("--dmax", ko.dmax, "residual window |wa - wb| <= dmax gamma");
    kosh->add_option("--samples", ko.n, "residual samples");
    kosh->add_option("--nodes", ko.nodes, "L2 quadrature nodes per axis");

    OracleOpts orc;
    CLI::App *oracle = app.add_subcommand("oracle", "time-domain integration against the analytic maps");
    oracle->add_option("--photons", orc.photons, "1 or 2");
    oracle->add_option("--input", orc.input, "pulse descriptor");
    oracle->add_flag("--report-inversion", orc.report_inversion, "report the largest excited population");
    oracle->add_flag("--convergence", orc.convergence, "run the dt and grid refinement study");
    oracle->add_option("--tail-tol", orc.tail_tol, "input probability allowed outside the simulated window");
    oracle->add_option("--dt-factor", orc.dt_factor, "dt times the largest frequency");

    for (CLI::App *sub : {pulse, scatter, sweep_cmd, opt, kosh, oracle}) add_common(sub, c);

    std::vector<std::string> tokens;
    try {
        tokens = expand(raw);
    } catch (const Error &e) {
        err << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "ConfigError: " << e.what() << "\n";
        return kExitConfig;
    }
    std::vector<std::string> rev(tokens.rbegin(), tokens.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "ConfigError: " << e.what() << "\n" << app.help();
        return kExitConfig;
    }

    const Emitter em(c, tokens, out);
    try {
        if (*pulse) {
            if (po.input.empty()) throw CLI::ValidationError("--input", "empty pulse descriptor");
            return cmd_pulse(pulse, c, po, em);
        }
        if (*scatter) {
            if (so.input.empty()) throw CLI::ValidationError("--input", "empty pulse descriptor");
            return cmd_scatter(scatter, c, so, em);
        }
        if (*sweep_cmd) return cmd_sweep(sweep_cmd, c, sw, em);
        if (*opt) return cmd_optimize(opt, c, oo, em);
        if (*kosh) return cmd_koshino(kosh, c, ko, em);
        if (*oracle) return cmd_oracle(oracle, c, orc, em);
    } catch (const CLI::ValidationError &e) {
        err << "ConfigError: " << e.what() << "\n";
        for (CLI::App *sub : app.get_subcommands()) err << sub->help();
        return kExitConfig;
    } catch (const Error &e) {
        err << e.what() << "\n";
        return is_config_error(e.kind()) ? kExitConfig : kExitNumerical;
    } catch (const json::exception &e) {
        err << "ConfigError: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "NumericalFailure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}

}  // namespace vcav::cli
