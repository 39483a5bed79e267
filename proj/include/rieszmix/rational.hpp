// Copyright 2026 The rieszmix Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "rieszmix/error.hpp"

namespace rieszmix {

/// Exact arbitrary-precision rational; always normalized (lowest terms, positive denominator).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p/q" or "p" with an optional sign on p. Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!digits(den)) throw Error(ErrorKind::parse, "malformed rational \"" + std::string(text) + "\"");
  }
  std::string_view mag = num;
  if (!mag.empty() && (mag.front() == '-' || mag.front() == '+')) mag.remove_prefix(1);
  if (!digits(mag)) throw Error(ErrorKind::parse, "malformed rational \"" + std::string(text) + "\"");

  Integer n{std::string(mag)};
  if (num.front() == '-') n = -n;
  if (den.empty()) return Rational(n);
  Integer d{std::string(den)};
  if (d == 0) throw Error(ErrorKind::parse, "zero denominator in \"" + std::string(text) + "\"");
  return Rational(n, d);
}

/// Lowest-terms text form: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const Integer& d = boost::multiprecision::denominator(r);
  std::string out = boost::multiprecision::numerator(r).str();
  if (d != 1) {
    out += '/';
    out += d.str();
  }
  return out;
}

inline Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace rieszmix
