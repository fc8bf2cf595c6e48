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

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace graceful {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" (or "p" when q = 1).
std::string to_string(const Rational& r);

/// Accepts "p/q", an integer, or a terminating decimal such as "0.25".
/// Decimals are converted exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

BigInt ceil_rational(const Rational& r);

}  // namespace graceful
