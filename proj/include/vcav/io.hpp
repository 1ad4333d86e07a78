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

#ifndef VCAV_IO_HPP
#define VCAV_IO_HPP

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "vcav/core.hpp"
#include "vcav/optimizer.hpp"
#include "vcav/oracle.hpp"

namespace vcav {

// CSV writers. Numbers use 17 significant digits so files round-trip bitwise.
void write_spectrum1_csv(std::ostream &os, const std::vector<double> &omega, const std::vector<cplx> &values);
void write_spectrum1_csv(std::ostream &os, const FrequencyGrid &grid, const std::function<cplx(double)> &f);
void write_spectrum2_csv(std::ostream &os, const FrequencyGrid &grid, const std::vector<cplx> &values);
void write_spectrum2_csv(std::ostream &os, const FrequencyGrid &grid, const std::function<cplx(double, double)> &f);
void write_sweep_csv(std::ostream &os, const std::vector<SweepPoint> &points);
void write_trajectory_csv(std::ostream &os, const std::vector<TrajectorySample> &traj);

std::string format_double(double x);

// Writes text to path, creating parent directories.
void write_file(const std::string &path, const std::string &text);
// "out.csv" -> "out.json"; other extensions get ".json" appended.
std::string metadata_path(const std::string &data_path);

}  // namespace vcav

#endif
