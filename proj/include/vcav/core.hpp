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

#ifndef VCAV_CORE_HPP
#define VCAV_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcav {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorKind {
    DecayViolation,
    PoleOnAxis,
    NonPositiveWidth,
    AsymmetricInput,
    UnsupportedForm,
    BadRegime,
    NoSolution,
    NormViolation,
    NonConvergence,
    NormDrift,
    ConfigError,
};

const char *error_kind_name(ErrorKind kind);

// True for errors caused by bad user input rather than a numerical failure.
bool is_config_error(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what);
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

// Cavity/atom parameters. Frequencies are measured from the cavity frequency.
struct SystemParams {
    double g = 1.0;
    double kappa = 1.0;
    double delta = 0.0;

    SystemParams() = default;
    SystemParams(double g, double kappa, double delta = 0.0);

    double gamma() const { return g * g / kappa; }
    // Reference frequency used for relative tolerances.
    double scale() const;
};

// Uniform grid of N (odd) points covering [center - half_extent, center + half_extent].
class FrequencyGrid {
  public:
    FrequencyGrid(double center, double half_extent, int count);

    double center() const { return center_; }
    double half_extent() const { return half_extent_; }
    int count() const { return count_; }
    double spacing() const { return 2.0 * half_extent_ / (count_ - 1); }
    // Exact at the middle node.
    double at(int i) const { return center_ + (i - count_ / 2) * spacing(); }
    std::vector<double> nodes() const;

  private:
    double center_;
    double half_extent_;
    int count_;
};

struct OverlapResult {
    cplx amplitude;

    OverlapResult() = default;
    explicit OverlapResult(cplx c) : amplitude(c) {}
    double fidelity() const { return std::norm(amplitude); }
    double phase() const { return std::arg(amplitude); }
};

// K(w) = kappa + i w
cplx kernel_K(double omega, const SystemParams &p);
// P(w) = g^2 - i (w + delta)(kappa - i w)
cplx kernel_P(double omega, const SystemParams &p);

// Roots r1, r2 of P, i.e. P(w) = -(w - r1)(w - r2). Both lie in the lower half-plane.
// A double root (delta = 0, kappa = 2g) is returned twice with identical values.
std::pair<cplx, cplx> kernel_P_roots(const SystemParams &p);

}  // namespace vcav

#endif
