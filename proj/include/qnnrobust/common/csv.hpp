// Copyright 2026 The qnnrobust Authors
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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qnnrobust {

using CsvRow = std::vector<std::string>;

/// Parses comma-separated text with double-quoted fields. Blank lines are
/// skipped; a trailing '\r' is dropped.
std::vector<CsvRow> parse_csv(std::string_view text);
/// Quotes a field if it contains a comma, quote or newline.
std::string csv_field(std::string_view s);
std::string csv_line(const CsvRow &fields);

/// %.17g, so values round-trip exactly.
std::string format_double(double v);
/// format_double, or "undefined".
std::string format_optional(const std::optional<double> &v);
/// Inverse of format_optional; throws FormatError on junk.
std::optional<double> parse_optional(std::string_view s);
double parse_double(std::string_view s);

} // namespace qnnrobust
