/*
 *  Copyright 2026 the netinf authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

#include <string>

namespace netinf {

/// Shortest %.17g rendering; round trips through strtod exactly.
std::string fmt_g17(double x);

std::string fmt_g(double x, int precision);

/// Fixed-point rendering with the given number of decimals.
std::string fmt_f(double x, int decimals);

/// RFC 4180 quoting: wraps in double quotes when the field contains a
/// comma, quote, or newline, doubling embedded quotes.
std::string csv_quote(const std::string& field);

}  // namespace netinf
