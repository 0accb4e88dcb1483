// Copyright 2026 The Duelbench Authors
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

#include "duelbench/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace duelbench {

Rational rational_from_decimal(const std::string& text) {
  using boost::multiprecision::cpp_int;
  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  size_t frac_len = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal literal: " + text);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_len;
      seen_digit = true;
    } else {
      throw std::invalid_argument("bad decimal literal: " + text);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad decimal literal: " + text);
  // cpp_int reads a leading zero as an octal prefix; strip them.
  size_t first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  cpp_int num(digits);
  cpp_int den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  if (negative) num = -num;
  return Rational(num, den);
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

std::string to_string(const Rational& value) {
  return value.str();
}

}  // namespace duelbench
