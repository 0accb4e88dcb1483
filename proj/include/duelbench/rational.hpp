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

#ifndef DUELBENCH_RATIONAL_HPP_
#define DUELBENCH_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace duelbench {

/// Arbitrary-precision rational. Decimal literals (the form certificate
/// tables are published in) convert exactly, so feasibility checks on them
/// carry no rounding at all.
using Rational = boost::multiprecision::cpp_rational;

/// Parses a decimal literal such as "-0.612275" or "3.2" into an exact
/// rational. Throws std::invalid_argument on anything else (no exponents,
/// no hex); this parser is for transcribed tables, not general input.
Rational rational_from_decimal(const std::string& text);

double to_double(const Rational& value);

std::string to_string(const Rational& value);

}  // namespace duelbench

#endif  // DUELBENCH_RATIONAL_HPP_
