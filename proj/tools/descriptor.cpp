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

#include "descriptor.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "vcav/io.hpp"

namespace vcav::cli {

namespace {

class Parser {
  public:
    explicit Parser(const std::string &s) : s_(s) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string &what) const {
        std::ostringstream msg;
        msg << "bad pulse descriptor '" << s_ << "' at position " << pos_ << ": " << what;
        throw Error(ErrorKind::ConfigError, msg.str());
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    Expr expr() {
        skip();
        if (pos_ >= s_.size()) fail("expected a pulse or number");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') return number();
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected a name");
        Expr e;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            e.name += s_[pos_++];
        }
        if (peek('(')) {
            ++pos_;
            if (!peek(')')) {
                e.args.push_back(expr());
                while (peek(',')) {
                    ++pos_;
                    e.args.push_back(expr());
                }
            }
            if (!peek(')')) fail("expected ')'");
            ++pos_;
        }
        return e;
    }

    Expr number() {
        const char *first = s_.data() + pos_;
        const char *last = s_.data() + s_.size();
        if (*first == '+') ++first;
        Expr e;
        e.is_number = true;
        const auto res = std::from_chars(first, last, e.number);
        if (res.ec != std::errc()) fail("bad number");
        pos_ = static_cast<size_t>(res.ptr - s_.data());
        return e;
    }

    const std::string &s_;
    size_t pos_ = 0;
};

void expect_args(const Expr &e, size_t n) {
    if (e.is_number) throw Error(ErrorKind::ConfigError, "expected a pulse, got a number");
    if (e.args.size() != n) {
        std::ostringstream msg;
        msg << e.name << " takes " << n << " argument" << (n == 1 ? "" : "s") << ", got " << e.args.size();
        throw Error(ErrorKind::ConfigError, msg.str());
    }
}

double num(const Expr &e) {
    if (!e.is_number) throw Error(ErrorKind::ConfigError, "expected a number, got '" + to_string(e) + "'");
    return e.number;
}

}  // namespace

Expr parse_descriptor(const std::string &text) {
    if (text.find_first_not_of(" \t") == std::string::npos) {
        throw Error(ErrorKind::ConfigError, "empty pulse descriptor");
    }
    return Parser(text).parse();
}

std::string to_string(const Expr &e) {
    if (e.is_number) return format_double(e.number);
    std::string s = e.name;
    if (!e.args.empty()) {
        s += '(';
        for (size_t k = 0; k < e.args.size(); ++k) {
            if (k) s += ',';
            s += to_string(e.args[k]);
        }
        s += ')';
    }
    return s;
}

bool is_two_photon(const Expr &e) { return !e.is_number && (e.name == "product" || e.name == "koshino"); }

OnePhotonPulse build_pulse(const Expr &e, const SystemParams &p, double scale) {
    if (e.name == "lorentzian") {
        expect_args(e, 2);
        return lorentzian(num(e.args[0]) / scale, num(e.args[1]) / scale);
    }
    if (e.name == "sstar") {
        expect_args(e, 0);
        return full_excitation_pulse(p);
    }
    if (e.name == "s") {
        expect_args(e, 0);
        return time_reverse(full_excitation_pulse(p));
    }
    if (e.name == "shift") {
        expect_args(e, 2);
        return time_shift(build_pulse(e.args[0], p, scale), num(e.args[1]) * scale);
    }
    if (e.name == "reverse") {
        expect_args(e, 1);
        return time_reverse(build_pulse(e.args[0], p, scale));
    }
    if (is_two_photon(e)) throw Error(ErrorKind::ConfigError, "'" + e.name + "' is a two-photon descriptor");
    throw Error(ErrorKind::ConfigError, "unknown pulse '" + to_string(e) + "'");
}

TwoPhotonSpectrum build_two_photon(const Expr &e, const SystemParams &p, double scale) {
    if (e.name == "product") {
        expect_args(e, 2);
        return product_state(build_pulse(e.args[0], p, scale), build_pulse(e.args[1], p, scale));
    }
    if (e.name == "koshino") {
        expect_args(e, 2);
        return koshino_pulse(num(e.args[0]) * scale, num(e.args[1]) * scale);
    }
    throw Error(ErrorKind::ConfigError, "'" + to_string(e) + "' is not a two-photon descriptor");
}

}  // namespace vcav::cli
