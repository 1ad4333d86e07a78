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

#ifndef VCAV_ORACLE_HPP
#define VCAV_ORACLE_HPP

#include <functional>
#include <string>
#include <vector>

#include "vcav/core.hpp"
#include "vcav/pulses.hpp"

namespace vcav {

// Direct time integration of the interaction-picture equations on a discretized continuum.
// The grid spacing fixes a recurrence time 2 pi / spacing, which must exceed t_final.

struct OracleConfig {
    FrequencyGrid grid{0.0, 1.0, 3};
    double dt = 0.0;
    double t_final = 0.0;
    // The input is time-shifted by T before integration starts at t = 0.
    double shift = 0.0;
    // Record a trajectory sample every this many steps (0 disables).
    int record_every = 10;
    double norm_tol = 1e-6;
    // Largest allowed fraction of the input norm at t < 0.
    double pre_tail_tol = 1e-6;
};

struct OracleSizing {
    int count = 2001;
    // Upper bound on the half extent; reduced when the recurrence time would be too short.
    double max_half_extent = 0.0;
    // Probability left outside [0, t_final] that the sizing aims for.
    double tail_tol = 1e-8;
    double dt_factor = 0.1;
};

// Shift, window and step for a given input. The half extent defaults to 30 max(kappa, g) for one
// photon; pass the two-photon defaults explicitly.
OracleConfig auto_config(const OnePhotonPulse &pulse, const SystemParams &p, const OracleSizing &s = {});
OracleConfig auto_config(const TwoPhotonSpectrum &input, const SystemParams &p, const OracleSizing &s);
OracleSizing two_photon_sizing(const SystemParams &p);

struct TrajectorySample {
    double t = 0.0;
    double excited = 0.0;  // |c_e|^2, or the summed singly-excited weight for two photons
    double norm = 0.0;
};

struct OracleState1 {
    FrequencyGrid grid{0.0, 1.0, 3};
    std::vector<cplx> xi;
    cplx c_e;
    double t = 0.0;
    double norm() const;
};

struct OracleState2 {
    FrequencyGrid grid{0.0, 1.0, 3};
    std::vector<cplx> xi_ab;  // row-major, xi_ab[i * N + j] at (grid.at(i), grid.at(j))
    std::vector<cplx> xi_a;
    std::vector<cplx> xi_b;
    double t = 0.0;
    double norm() const;
};

struct OracleRun1 {
    OracleConfig config;
    OracleState1 final_state;
    std::vector<TrajectorySample> trajectory;
    double initial_norm = 0.0;
    double max_drift = 0.0;
    double max_excited = 0.0;
    double pre_tail = 0.0;
    // Outgoing spectrum on the grid with the outcoupling factor applied and the shift removed.
    std::vector<cplx> output;
};

struct OracleRun2 {
    OracleConfig config;
    OracleState2 final_state;
    std::vector<TrajectorySample> trajectory;
    double initial_norm = 0.0;
    double max_drift = 0.0;
    double pre_tail = 0.0;
    std::vector<cplx> output;  // row-major, as xi_ab
    TwoPhotonSpectrum output_spectrum() const;
};

OracleRun1 simulate_single(const OnePhotonPulse &pulse, const SystemParams &p, const OracleConfig &cfg);
OracleRun2 simulate_two(const TwoPhotonSpectrum &input, const SystemParams &p, const OracleConfig &cfg);

// Discrete L2 distances on the run's grid against an analytic spectrum.
double grid_distance(const FrequencyGrid &grid, const std::vector<cplx> &values,
                     const std::function<cplx(double)> &reference);
double grid_distance(const FrequencyGrid &grid, const std::vector<cplx> &values,
                     const std::function<cplx(double, double)> &reference);

struct ConvergenceReport {
    std::string quantity;           // "dt" or "grid"
    std::vector<double> steps;      // dt values or grid counts
    std::vector<double> distances;  // distance between consecutive refinements
    double observed_order = 0.0;
    double error_estimate = 0.0;  // extrapolated error of the finest run
};

// Runs at dt, dt/2, dt/4 and compares the outputs pairwise on the common grid.
ConvergenceReport dt_convergence(const OnePhotonPulse &pulse, const SystemParams &p, const OracleConfig &cfg);
// Runs at N and 2N - 1 nodes over the same window; compares on the coarse nodes and against apply().
ConvergenceReport grid_convergence(const OnePhotonPulse &pulse, const SystemParams &p, const OracleConfig &cfg);

}  // namespace vcav

#endif
