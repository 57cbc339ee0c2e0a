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

#include "tollgame/money.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tollgame {

namespace {

BigInt pow10(int n) {
  BigInt r(1);
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// cpp_int's string constructor honours C-style base prefixes, so "09" would
// be read as malformed octal. Strip leading zeros first.
BigInt from_digits(const std::string& s) {
  size_t first = s.find_first_not_of('0');
  if (first == std::string::npos) return BigInt(0);
  return BigInt(s.substr(first));
}

}  // namespace

Money parse_money(const std::string& text) {
  std::string s = text;
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty money literal");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    s = s.substr(1);
  }

  Money value;
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational literal: " + text);
    }
    BigInt d = from_digits(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    value = Money(from_digits(num), d);
  } else {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      if (!all_digits(s)) throw std::invalid_argument("malformed money literal: " + text);
      value = Money(from_digits(s));
    } else {
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      if (whole.empty()) whole = "0";
      if (frac.empty()) throw std::invalid_argument("malformed money literal: " + text);
      if (!all_digits(whole) || !all_digits(frac)) {
        throw std::invalid_argument("malformed money literal: " + text);
      }
      BigInt scale = pow10(static_cast<int>(frac.size()));
      value = Money(from_digits(whole) * scale + from_digits(frac), scale);
    }
  }
  if (negative) value = -value;
  return value;
}

BigInt floor_rat(const Money& x) {
  BigInt num = numerator(x);
  BigInt den = denominator(x);  // always > 0 for cpp_rational
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

BigInt ceil_rat(const Money& x) {
  BigInt num = numerator(x);
  BigInt den = denominator(x);
  BigInt q = num / den;
  if (num > 0 && q * den != num) ++q;
  return q;
}

Money round_nearest(const Money& x, int dp) {
  BigInt scale = pow10(dp);
  Money scaled = x * Money(scale);
  BigInt units;
  if (scaled >= 0) {
    units = floor_rat(scaled + Money(1, 2));
  } else {
    units = ceil_rat(scaled - Money(1, 2));
  }
  return Money(units, scale);
}

Money round_ceil(const Money& x, int dp) {
  BigInt scale = pow10(dp);
  return Money(ceil_rat(x * Money(scale)), scale);
}

Money apply_rounding(const Money& x, Rounding mode) {
  switch (mode) {
    case Rounding::None:
      return x;
    case Rounding::Nearest2:
      return round_nearest(x, 2);
    case Rounding::Ceil2:
      return round_ceil(x, 2);
  }
  return x;
}

std::string format_fixed(const Money& x, int dp) {
  Money r = round_nearest(x, dp);
  bool neg = r < 0;
  if (neg) r = -r;
  BigInt scale = pow10(dp);
  BigInt units = numerator(r * Money(scale));  // integral after rounding
  BigInt whole = units / scale;
  BigInt frac = units % scale;
  std::ostringstream out;
  if (neg && units != 0) out << '-';
  out << whole;
  if (dp > 0) {
    std::string f = frac.str();
    out << '.' << std::string(static_cast<size_t>(dp) - f.size(), '0') << f;
  }
  return out.str();
}

std::string format_exact(const Money& x) {
  BigInt den = denominator(x);
  int twos = 0;
  int fives = 0;
  BigInt d = den;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return format_fraction(x);
  int dp = twos > fives ? twos : fives;
  if (dp == 0) return numerator(x).str();
  return format_fixed(x, dp);
}

std::string format_fraction(const Money& x) {
  std::ostringstream out;
  out << numerator(x) << '/' << denominator(x);
  return out.str();
}

Rounding parse_rounding(const std::string& name) {
  if (name == "none") return Rounding::None;
  if (name == "nearest2" || name == "nearest-2dp") return Rounding::Nearest2;
  if (name == "ceil2" || name == "ceil-2dp") return Rounding::Ceil2;
  throw std::invalid_argument("unknown rounding mode: " + name);
}

std::string rounding_name(Rounding mode) {
  switch (mode) {
    case Rounding::None:
      return "none";
    case Rounding::Nearest2:
      return "nearest2";
    case Rounding::Ceil2:
      return "ceil2";
  }
  return "none";
}

}  // namespace tollgame
