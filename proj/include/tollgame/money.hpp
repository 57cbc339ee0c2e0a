// Copyright 2026 The tollgame Authors
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

#ifndef TOLLGAME_MONEY_HPP
#define TOLLGAME_MONEY_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tollgame {

/// Exact rational money amount. All engine arithmetic is exact; decimal
/// conversion happens only at the output boundary.
using Money = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Rounding { None, Nearest2, Ceil2 };

/// Parses "12", "1.90", "-0.5", or "3/4" into an exact rational.
/// Throws std::invalid_argument on malformed input.
Money parse_money(const std::string& text);

/// Largest integer <= x.
BigInt floor_rat(const Money& x);
/// Smallest integer >= x.
BigInt ceil_rat(const Money& x);

/// Rounds to `dp` decimal places, half away from zero.
Money round_nearest(const Money& x, int dp);
/// Rounds up (toward +inf) to `dp` decimal places.
Money round_ceil(const Money& x, int dp);
/// Applies a Rounding mode at two decimal places (None returns x).
Money apply_rounding(const Money& x, Rounding mode);

/// Fixed-point rendering with `dp` decimals (value rounded half away from
/// zero first).
std::string format_fixed(const Money& x, int dp);

/// Exact rendering: a terminating decimal when the denominator is 2^a*5^b,
/// otherwise "num/den".
std::string format_exact(const Money& x);

/// "num/den" (den always present, positive).
std::string format_fraction(const Money& x);

Rounding parse_rounding(const std::string& name);  // throws on unknown name
std::string rounding_name(Rounding mode);

}  // namespace tollgame

#endif  // TOLLGAME_MONEY_HPP
