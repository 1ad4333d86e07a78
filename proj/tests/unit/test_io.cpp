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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vcav/io.hpp"

namespace vcav {
namespace {

std::string first_line(const std::string &s) { return s.substr(0, s.find('\n')); }

TEST(Io, FormatDoubleRoundTrips) {
    for (double x : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 0.0}) EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
}

TEST(Io, Spectrum1Header) {
    std::ostringstream os;
    write_spectrum1_csv(os, {0.0, 1.0}, {cplx(1, 0), cplx(0, 1)});
    const std::string text = os.str();
    EXPECT_EQ(first_line(text), "omega,re,im,abs,arg");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST(Io, Spectrum2RowsAreRowMajor) {
    std::ostringstream os;
    const FrequencyGrid g(0.0, 1.0, 3);
    write_spectrum2_csv(os, g, [](double a, double b) { return cplx(a, b); });
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "omega_a,omega_b,re,im,abs,arg");
    std::getline(is, line);
    EXPECT_EQ(line.substr(0, 5), "-1,-1");
    std::getline(is, line);
    EXPECT_EQ(line.substr(0, 4), "-1,0");
}

TEST(Io, SweepAddsTimeReversedColumnsWhenPresent) {
    SweepPoint a;
    a.params = SystemParams(1.0, 2.0);
    std::ostringstream plain;
    write_sweep_csv(plain, {a});
    EXPECT_EQ(first_line(plain.str()), "kappa_over_g,r,omega0,delta,re_c1,im_c1,re_c2,im_c2,f_gate");
    a.has_time_reversed = true;
    std::ostringstream tr;
    write_sweep_csv(tr, {a});
    EXPECT_NE(first_line(tr.str()).find("re_c2_tr"), std::string::npos);
}

TEST(Io, MetadataPath) {
    EXPECT_EQ(metadata_path("out/run.csv"), "out/run.json");
    EXPECT_EQ(metadata_path("run.json"), "run.json.meta.json");
}

TEST(Io, WriteFileCreatesDirectories) {
    const auto dir = std::filesystem::temp_directory_path() / "vcav_io_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    write_file((dir / "a.txt").string(), "hello\n");
    std::ifstream f(dir / "a.txt");
    std::string s;
    std::getline(f, s);
    EXPECT_EQ(s, "hello");
    std::filesystem::remove_all(dir.parent_path());
}

}  // namespace
}  // namespace vcav
