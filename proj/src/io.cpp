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

#include "vcav/io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>

namespace vcav {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void row(std::ostream &os, std::initializer_list<double> xs) {
    bool first = true;
    for (double x : xs) {
        if (!first) os << ',';
        os << format_double(x);
        first = false;
    }
    os << '\n';
}

}  // namespace

void write_spectrum1_csv(std::ostream &os, const std::vector<double> &omega, const std::vector<cplx> &values) {
    if (omega.size() != values.size()) throw Error(ErrorKind::ConfigError, "spectrum size mismatch");
    os << "omega,re,im,abs,arg\n";
    for (size_t k = 0; k < omega.size(); ++k) {
        const cplx v = values[k];
        row(os, {omega[k], v.real(), v.imag(), std::abs(v), std::arg(v)});
    }
}

void write_spectrum1_csv(std::ostream &os, const FrequencyGrid &grid, const std::function<cplx(double)> &f) {
    const std::vector<double> w = grid.nodes();
    std::vector<cplx> v(w.size());
    for (size_t k = 0; k < w.size(); ++k) v[k] = f(w[k]);
    write_spectrum1_csv(os, w, v);
}

void write_spectrum2_csv(std::ostream &os, const FrequencyGrid &grid, const std::vector<cplx> &values) {
    const int n = grid.count();
    if (values.size() != static_cast<size_t>(n) * n) throw Error(ErrorKind::ConfigError, "spectrum size mismatch");
    os << "omega_a,omega_b,re,im,abs,arg\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cplx v = values[static_cast<size_t>(i) * n + j];
            row(os, {grid.at(i), grid.at(j), v.real(), v.imag(), std::abs(v), std::arg(v)});
        }
    }
}

void write_spectrum2_csv(std::ostream &os, const FrequencyGrid &grid, const std::function<cplx(double, double)> &f) {
    const int n = grid.count();
    std::vector<cplx> v(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(i) * n + j] = f(grid.at(i), grid.at(j));
    }
    write_spectrum2_csv(os, grid, v);
}

void write_sweep_csv(std::ostream &os, const std::vector<SweepPoint> &points) {
    const bool tr = std::any_of(points.begin(), points.end(), [](const SweepPoint &p) { return p.has_time_reversed; });
    os << "kappa_over_g,r,omega0,delta,re_c1,im_c1,re_c2,im_c2,f_gate";
    if (tr) os << ",re_c1_tr,im_c1_tr,re_c2_tr,im_c2_tr";
    os << '\n';
    for (const SweepPoint &p : points) {
        os << format_double(p.params.kappa / p.params.g) << ',' << format_double(p.r) << ',' << format_double(p.omega0)
           << ',' << format_double(p.params.delta) << ',' << format_double(p.c1.real()) << ','
           << format_double(p.c1.imag()) << ',' << format_double(p.c2.real()) << ',' << format_double(p.c2.imag())
           << ',' << format_double(p.f_gate);
        if (tr) {
            os << ',' << format_double(p.c1_tr.real()) << ',' << format_double(p.c1_tr.imag()) << ','
               << format_double(p.c2_tr.real()) << ',' << format_double(p.c2_tr.imag());
        }
        os << '\n';
    }
}

void write_trajectory_csv(std::ostream &os, const std::vector<TrajectorySample> &traj) {
    os << "t,excited,norm\n";
    for (const auto &s : traj) row(os, {s.t, s.excited, s.norm});
}

void write_file(const std::string &path, const std::string &text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error(ErrorKind::ConfigError, "cannot open " + path + " for writing");
    f << text;
    if (!f) throw Error(ErrorKind::ConfigError, "failed writing " + path);
}

std::string metadata_path(const std::string &data_path) {
    std::filesystem::path p(data_path);
    if (p.extension() == ".json") return data_path + ".meta.json";
    p.replace_extension(".json");
    return p.string();
}

}  // namespace vcav
