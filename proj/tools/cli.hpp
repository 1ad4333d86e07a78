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

#ifndef VCAV_TOOLS_CLI_HPP
#define VCAV_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "vcav/core.hpp"

namespace vcav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Frequencies on the command line are in units of g, kappa or gamma. Internally g = 1.
class UnitSystem {
  public:
    // g and kappa are in the named units; flags say which of them the user set explicitly.
    UnitSystem(const std::string &name, double g, double kappa, bool g_given, bool kappa_given);

    const std::string &name() const { return name_; }
    // g expressed in the user's units.
    double g_user() const { return g_; }
    double kappa_user() const { return kappa_; }
    double to_internal(double freq) const { return freq / g_; }
    double from_internal(double freq) const { return freq * g_; }
    double time_to_internal(double t) const { return t * g_; }
    SystemParams params(double delta_user) const;

  private:
    std::string name_;
    double g_ = 1.0;
    double kappa_ = 1.0;
};

// args excludes the program name. Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Preset token lists, keyed by name.
std::vector<std::string> preset_names();
std::vector<std::string> preset_tokens(const std::string &name);

}  // namespace vcav::cli

#endif
