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

#include "megame/rational.hpp"

#include <cctype>

#include "megame/error.hpp"

namespace megame {

BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

std::string to_string(const Rational& r) {
  const BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt pow10(int n) {
  BigInt p = 1;
  for (int i = 0; i < n; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  const auto slash = body.find('/');
  const std::string num_text = body.substr(0, slash);
  const std::string den_text =
      slash == std::string::npos ? std::string("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    fail(ErrorKind::kParse, "malformed rational '" + text + "'");
  }
  const BigInt den(den_text);
  if (den == 0) fail(ErrorKind::kParse, "zero denominator in '" + text + "'");
  Rational value(BigInt(num_text), den);
  return negative ? Rational(-value) : value;
}

std::string to_decimal(const Rational& r, int significant) {
  if (significant < 1) significant = 1;
  if (r == 0) return "0";
  const bool negative = r < 0;
  const Rational x = negative ? Rational(-r) : r;

  // Find exponent e with 10^e <= x < 10^(e+1).
  int e = 0;
  if (x >= 1) {
    while (x >= Rational(pow10(e + 1))) ++e;
  } else {
    e = -1;
    while (x < Rational(BigInt(1), pow10(-e))) --e;
  }

  // digits = round_half_even(x * 10^(significant - 1 - e))
  const int shift = significant - 1 - e;
  Rational scaled =
      shift >= 0 ? x * Rational(pow10(shift)) : x / Rational(pow10(-shift));
  BigInt q = numerator_of(scaled) / denominator_of(scaled);
  const Rational frac = scaled - Rational(q);
  const Rational half(BigInt(1), BigInt(2));
  if (frac > half || (frac == half && (q % 2) != 0)) ++q;
  int exp10 = e;
  if (q == pow10(significant)) {
    q /= 10;
    ++exp10;
  }

  std::string digits = q.str();
  std::string out;
  if (exp10 < -5 || exp10 >= significant) {
    std::string mantissa = digits.substr(0, 1);
    std::string rest = digits.substr(1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    if (!rest.empty()) mantissa += "." + rest;
    const int a = exp10 < 0 ? -exp10 : exp10;
    out = mantissa + "e" + (exp10 < 0 ? "-" : "+") + (a < 10 ? "0" : "") +
          std::to_string(a);
  } else if (exp10 >= 0) {
    std::string int_part = digits.substr(0, exp10 + 1);
    std::string rest = digits.substr(exp10 + 1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    out = rest.empty() ? int_part : int_part + "." + rest;
  } else {
    std::string rest = std::string(-exp10 - 1, '0') + digits;
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    out = "0." + rest;
  }
  return negative ? "-" + out : out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

}  // namespace megame
