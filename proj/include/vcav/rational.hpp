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

#ifndef VCAV_RATIONAL_HPP
#define VCAV_RATIONAL_HPP

#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "vcav/core.hpp"

namespace vcav {

// Relative tolerances. Multiply by a frequency scale before use.
inline constexpr double kTolMerge = 1e-9;
inline constexpr double kTolExact = 1e-14;
inline constexpr double kPerturb = 1e-7;
inline constexpr double kTolAxis = 1e-12;
inline constexpr double kTolCluster = 1e-2;

template <class T>
using SmallVec = boost::container::small_vector<T, 8>;

// Partial-fraction form: constant + sum_k [ r1_k/(w - p_k) + r2_k/(w - p_k)^2 ].
// r2_k is zero for simple poles.
struct PoleTerm {
    cplx pole;
    int multiplicity = 1;
    cplx r1;
    cplx r2;
};

class RationalSpectrum {
  public:
    RationalSpectrum() = default;
    RationalSpectrum(cplx constant, SmallVec<PoleTerm> terms);

    cplx constant() const { return constant_; }
    const SmallVec<PoleTerm> &terms() const { return terms_; }
    // Messages about poles that had to be separated during construction.
    const std::vector<std::string> &warnings() const { return warnings_; }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

    cplx operator()(cplx w) const;
    // Largest pole modulus, or 1 if there are no poles.
    double scale() const;

  private:
    cplx constant_{0.0, 0.0};
    SmallVec<PoleTerm> terms_;
    std::vector<std::string> warnings_;
};

// Factored form: scale * prod(w - z_i) / prod(w - p_k).
// Repeated entries in the pole list encode multiplicity.
class Rational {
  public:
    Rational() = default;
    explicit Rational(cplx scale, SmallVec<cplx> zeros = {}, SmallVec<cplx> poles = {});

    static Rational constant(cplx c) { return Rational(c); }

    cplx scale() const { return scale_; }
    const SmallVec<cplx> &zeros() const { return zeros_; }
    const SmallVec<cplx> &poles() const { return poles_; }
    // Number of poles minus number of zeros; the function falls off as |w|^-order.
    int decay_order() const { return static_cast<int>(poles_.size() - zeros_.size()); }

    cplx operator()(cplx w) const;
    Rational operator*(const Rational &o) const;
    Rational operator*(cplx c) const;

    // w -> conj(f(conj(w))); equal to conj(f(w)) on the real axis.
    Rational conj() const;
    // w -> f(E - w)
    Rational reflected(cplx E) const;
    // w -> f(w - a)
    Rational translated(cplx a) const;

    // Removes pole-zero pairs closer than kTolMerge * ref_scale.
    Rational cancelled(double ref_scale) const;

    // Requires decay_order() >= 0. Poles closer than kTolExact * ref_scale merge into a
    // double pole; closer than kTolMerge * ref_scale they are separated by kPerturb * ref_scale.
    RationalSpectrum partial_fractions(double ref_scale) const;
    RationalSpectrum partial_fractions() const { return partial_fractions(default_scale()); }

    double default_scale() const;

  private:
    cplx scale_{0.0, 0.0};
    SmallVec<cplx> zeros_;
    SmallVec<cplx> poles_;
};

// Integral over the real line. Needs 1/w^2 decay (constant zero and residues summing to zero).
cplx rational_integrate(const RationalSpectrum &f);
// PV integral of f(w)/(w - a) over the real line. Needs f to vanish at infinity.
cplx principal_value_integrate(const RationalSpectrum &f, double a);

// Convenience overloads that build the partial fractions with the default scale and
// use the exact decay order from the factored form.
cplx rational_integrate(const Rational &f);
cplx principal_value_integrate(const Rational &f, double a);

// Sum of the residues of f(w)/(w - target) at the poles of f in the lower half-plane.
// Poles within kTolCluster * ref_scale of each other are summed together by a contour integral,
// which stays accurate where separate partial fractions would cancel.
cplx lower_residue_sum(const Rational &f, cplx target, double ref_scale);

}  // namespace vcav

#endif
