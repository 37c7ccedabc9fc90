// Copyright 2026 The megame Authors
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

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace megame {

// Exact arbitrary-precision rational. Every probability, score and ratio in
// the library is carried in this type; there is no floating-point path.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

BigInt numerator_of(const Rational& r);
BigInt denominator_of(const Rational& r);

// "n/d", or "n" when the denominator is one.
std::string to_string(const Rational& r);

// Parses "n", "-n" or "n/d". Throws megame::Error on malformed text or a zero
// denominator.
Rational parse_rational(const std::string& text);

// Decimal rendering rounded (half-even) to `significant` significant digits,
// formatted like printf's %g. Computed exactly from the rational.
std::string to_decimal(const Rational& r, int significant = 12);

double to_double(const Rational& r);

// base^exponent for a non-negative integer exponent.
Rational pow(const Rational& base, unsigned exponent);

}  // namespace megame
