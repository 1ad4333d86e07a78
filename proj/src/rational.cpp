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

#include "vcav/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vcav {

RationalSpectrum::RationalSpectrum(cplx constant, SmallVec<PoleTerm> terms)
    : constant_(constant), terms_(std::move(terms)) {
    for (const auto &t : terms_) {
        if (t.multiplicity < 1 || t.multiplicity > 2) {
            throw Error(ErrorKind::UnsupportedForm, "pole multiplicity must be 1 or 2");
        }
    }
}

cplx RationalSpectrum::operator()(cplx w) const {
    cplx s = constant_;
    for (const auto &t : terms_) {
        const cplx inv = 1.0 / (w - t.pole);
        s += inv * (t.r1 + t.r2 * inv);
    }
    return s;
}

double RationalSpectrum::scale() const {
    double s = 0.0;
    for (const auto &t : terms_) s = std::max(s, std::abs(t.pole));
    return s > 0.0 ? s : 1.0;
}

Rational::Rational(cplx scale, SmallVec<cplx> zeros, SmallVec<cplx> poles)
    : scale_(scale), zeros_(std::move(zeros)), poles_(std::move(poles)) {}

cplx Rational::operator()(cplx w) const {
    cplx v = scale_;
    for (const cplx &z : zeros_) v *= (w - z);
    for (const cplx &p : poles_) v /= (w - p);
    return v;
}

Rational Rational::operator*(const Rational &o) const {
    Rational r(scale_ * o.scale_, zeros_, poles_);
    r.zeros_.insert(r.zeros_.end(), o.zeros_.begin(), o.zeros_.end());
    r.poles_.insert(r.poles_.end(), o.poles_.begin(), o.poles_.end());
    return r;
}

Rational Rational::operator*(cplx c) const { return Rational(scale_ * c, zeros_, poles_); }

Rational Rational::conj() const {
    Rational r(std::conj(scale_), zeros_, poles_);
    for (auto &z : r.zeros_) z = std::conj(z);
    for (auto &p : r.poles_) p = std::conj(p);
    return r;
}

Rational Rational::reflected(cplx E) const {
    // E - w - z = -(w - (E - z))
    Rational r(scale_, zeros_, poles_);
    for (auto &z : r.zeros_) z = E - z;
    for (auto &p : r.poles_) p = E - p;
    if ((zeros_.size() + poles_.size()) % 2 == 1) r.scale_ = -r.scale_;
    return r;
}

Rational Rational::translated(cplx a) const {
    Rational r(scale_, zeros_, poles_);
    for (auto &z : r.zeros_) z += a;
    for (auto &p : r.poles_) p += a;
    return r;
}

Rational Rational::cancelled(double ref_scale) const {
    const double tol = kTolMerge * ref_scale;
    SmallVec<cplx> zeros = zeros_;
    SmallVec<cplx> poles;
    for (const cplx &p : poles_) {
        auto it = std::find_if(zeros.begin(), zeros.end(), [&](const cplx &z) { return std::abs(z - p) <= tol; });
        if (it != zeros.end()) {
            zeros.erase(it);
        } else {
            poles.push_back(p);
        }
    }
    return Rational(scale_, std::move(zeros), std::move(poles));
}

double Rational::default_scale() const {
    double s = 0.0;
    for (const cplx &p : poles_) s = std::max(s, std::abs(p));
    for (const cplx &z : zeros_) s = std::max(s, std::abs(z));
    return s > 0.0 ? s : 1.0;
}

RationalSpectrum Rational::partial_fractions(double ref_scale) const {
    if (decay_order() < 0) {
        throw Error(ErrorKind::UnsupportedForm, "rational function has a polynomial part");
    }
    const double tol_exact = kTolExact * ref_scale;
    const double tol_merge = kTolMerge * ref_scale;
    const double eps = kPerturb * ref_scale;

    struct Group {
        cplx p;
        int m;
    };
    SmallVec<Group> groups;
    std::vector<std::string> warnings;
    for (cplx p : poles_) {
        bool placed = false;
        for (auto &gr : groups) {
            if (std::abs(p - gr.p) <= tol_exact && gr.m < 2) {
                ++gr.m;
                placed = true;
                break;
            }
        }
        if (placed) continue;
        auto too_close = [&](cplx q) {
            return std::any_of(groups.begin(), groups.end(),
                               [&](const Group &gr) { return std::abs(q - gr.p) <= tol_merge; });
        };
        if (too_close(p)) {
            const cplx orig = p;
            while (too_close(p)) p += eps;
            std::ostringstream msg;
            msg << "pole " << orig << " nearly coincides with another pole; shifted by " << std::abs(p - orig);
            warnings.push_back(msg.str());
        }
        groups.push_back({p, 1});
    }

    SmallVec<PoleTerm> terms;
    terms.reserve(groups.size());
    for (size_t k = 0; k < groups.size(); ++k) {
        const cplx p = groups[k].p;
        cplx den(1.0, 0.0);
        cplx dlog_den(0.0, 0.0);
        for (size_t j = 0; j < groups.size(); ++j) {
            if (j == k) continue;
            const cplx d = p - groups[j].p;
            den *= groups[j].m == 2 ? d * d : d;
            dlog_den += static_cast<double>(groups[j].m) / d;
        }
        cplx num(1.0, 0.0);
        for (const cplx &z : zeros_) num *= (p - z);
        const cplx G = scale_ * num / den;
        PoleTerm t{p, groups[k].m, G, 0.0};
        if (groups[k].m == 2) {
            // G'(p) written without dividing by (p - z) so a zero at p stays finite.
            cplx dnum(0.0, 0.0);
            for (size_t i = 0; i < zeros_.size(); ++i) {
                cplx prod(1.0, 0.0);
                for (size_t l = 0; l < zeros_.size(); ++l) {
                    if (l != i) prod *= (p - zeros_[l]);
                }
                dnum += prod;
            }
            t.r2 = G;
            t.r1 = scale_ * dnum / den - G * dlog_den;
        }
        terms.push_back(t);
    }
    RationalSpectrum out(decay_order() == 0 ? scale_ : cplx(0.0, 0.0), std::move(terms));
    for (auto &w : warnings) out.add_warning(std::move(w));
    return out;
}

namespace {

void check_axis(const RationalSpectrum &f) {
    const double tol = kTolAxis * f.scale();
    for (const auto &t : f.terms()) {
        if (std::abs(t.pole.imag()) < tol) {
            std::ostringstream msg;
            msg << "pole " << t.pole << " lies on the real axis";
            throw Error(ErrorKind::PoleOnAxis, msg.str());
        }
    }
}

cplx upper_residue_sum(const RationalSpectrum &f) {
    cplx s(0.0, 0.0);
    for (const auto &t : f.terms()) {
        if (t.pole.imag() > 0.0) s += t.r1;
    }
    return s;
}

cplx pv_sum(const RationalSpectrum &f, double a) {
    cplx s(0.0, 0.0);
    for (const auto &t : f.terms()) {
        if (t.pole.imag() > 0.0) {
            const cplx inv = 1.0 / (t.pole - a);
            s += inv * (t.r1 - t.r2 * inv);
        }
    }
    return 2.0 * kPi * kI * s + kPi * kI * f(a);
}

}  // namespace

cplx rational_integrate(const RationalSpectrum &f) {
    check_axis(f);
    cplx total(0.0, 0.0);
    double mag = 0.0;
    for (const auto &t : f.terms()) {
        total += t.r1;
        mag += std::abs(t.r1);
    }
    if (f.constant() != cplx(0.0, 0.0) || std::abs(total) > 1e-9 * mag) {
        throw Error(ErrorKind::DecayViolation, "integrand decays only as 1/|w|");
    }
    return 2.0 * kPi * kI * upper_residue_sum(f);
}

cplx principal_value_integrate(const RationalSpectrum &f, double a) {
    check_axis(f);
    if (f.constant() != cplx(0.0, 0.0)) {
        throw Error(ErrorKind::DecayViolation, "integrand does not vanish at infinity");
    }
    return pv_sum(f, a);
}

cplx rational_integrate(const Rational &f) {
    if (f.decay_order() < 2) throw Error(ErrorKind::DecayViolation, "integrand decays only as 1/|w|");
    const RationalSpectrum s = f.partial_fractions();
    check_axis(s);
    return 2.0 * kPi * kI * upper_residue_sum(s);
}

cplx principal_value_integrate(const Rational &f, double a) {
    if (f.decay_order() < 1) throw Error(ErrorKind::DecayViolation, "integrand does not vanish at infinity");
    const RationalSpectrum s = f.partial_fractions();
    check_axis(s);
    return pv_sum(s, a);
}

cplx lower_residue_sum(const Rational &f, cplx target, double ref_scale) {
    const SmallVec<cplx> &poles = f.poles();
    const int n = static_cast<int>(poles.size());
    const double exact = kTolExact * ref_scale;

    // Chain-link lower poles closer than kTolCluster times their distance from the real axis.
    std::vector<int> id(n, -1);
    int clusters = 0;
    auto linked = [&](int i, int j) {
        const double scale = std::min(-poles[i].imag(), -poles[j].imag());
        return std::abs(poles[i] - poles[j]) <= kTolCluster * scale;
    };
    for (int i = 0; i < n; ++i) {
        if (poles[i].imag() >= 0.0 || id[i] >= 0) continue;
        id[i] = clusters;
        std::vector<int> stack{i};
        while (!stack.empty()) {
            const int k = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (id[j] < 0 && poles[j].imag() < 0.0 && linked(j, k)) {
                    id[j] = clusters;
                    stack.push_back(j);
                }
            }
        }
        ++clusters;
    }

    auto h = [&](cplx x) { return f(x) / (x - target); };
    auto residue = [&](int i, bool dbl) {
        const cplx p = poles[i];
        cplx den = p - target;
        cplx dlog = 1.0 / (p - target);
        int skipped = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i || (dbl && skipped == 0 && std::abs(poles[j] - p) <= exact)) {
                if (j != i) ++skipped;
                continue;
            }
            den *= p - poles[j];
            dlog += 1.0 / (p - poles[j]);
        }
        cplx num(1.0, 0.0);
        for (const cplx &z : f.zeros()) num *= p - z;
        if (!dbl) return f.scale() * num / den;
        cplx dnum(0.0, 0.0);
        for (size_t k = 0; k < f.zeros().size(); ++k) {
            cplx prod(1.0, 0.0);
            for (size_t l = 0; l < f.zeros().size(); ++l) {
                if (l != k) prod *= p - f.zeros()[l];
            }
            dnum += prod;
        }
        return f.scale() * (dnum - num * dlog) / den;
    };

    cplx total(0.0, 0.0);
    for (int c = 0; c < clusters; ++c) {
        std::vector<int> members;
        cplx centroid;
        double radius = 0.0;
        double dist = 0.0;
        int nearest = -1;
        // Grow the cluster until the nearest outside singularity is well clear of it.
        for (;;) {
            members.clear();
            centroid = 0.0;
            for (int i = 0; i < n; ++i) {
                if (id[i] == c) {
                    members.push_back(i);
                    centroid += poles[i];
                }
            }
            centroid /= static_cast<double>(members.size());
            radius = 0.0;
            for (int i : members) radius = std::max(radius, std::abs(poles[i] - centroid));
            dist = std::abs(target - centroid);
            nearest = -1;
            for (int j = 0; j < n; ++j) {
                if (id[j] != c && std::abs(poles[j] - centroid) < dist) {
                    dist = std::abs(poles[j] - centroid);
                    nearest = j;
                }
            }
            if (dist > 4.0 * radius || nearest < 0 || poles[nearest].imag() >= 0.0) break;
            const int old = id[nearest];
            for (int& k : id) {
                if (old >= 0 && k == old) k = c;
            }
            id[nearest] = c;
        }

        if (members.size() == 1) {
            total += residue(members[0], false);
            continue;
        }
        if (members.size() == 2 && 2.0 * radius <= exact) {
            total += residue(members[0], true);
            continue;
        }
        if (!(dist > 4.0 * radius)) {
            // Not separable from the rest; fall back to individual residues.
            for (int i : members) total += residue(i, false);
            continue;
        }

        // Trapezoid rule on a circle enclosing the cluster and nothing else.
        const double rho = radius < 0.25 * dist ? 0.5 * dist : std::sqrt(radius * dist);
        const double q = std::min(radius > 0.0 ? rho / radius : 1e300, dist / rho);
        const int m = std::clamp(static_cast<int>(std::ceil(40.0 / std::log(q))), 32, 8192);
        cplx sum(0.0, 0.0);
        for (int k = 0; k < m; ++k) {
            const cplx e = std::polar(1.0, 2.0 * kPi * (k + 0.5) / m);
            sum += h(centroid + rho * e) * e;
        }
        total += sum * rho / static_cast<double>(m);
    }
    return total;
}

}  // namespace vcav
