// Copyright 2026 The graceful-trees Authors
//
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

#include "graceful/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace graceful {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  BigInt value = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

}  // namespace

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(body.substr(0, slash), text);
    const BigInt den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = body.substr(0, dot);
    const std::string_view frac_part = body.substr(dot + 1);
    const BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
    value = Rational(whole * scale + frac, scale);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt ceil_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (q * den < num) ++q;
  return q;
}

}  // namespace graceful
