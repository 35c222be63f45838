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

#include "qnnrobust/common/csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include <boost/tokenizer.hpp>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust {

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
    // Backslashes are literal (Windows paths); only quotes are special.
    const boost::escaped_list_separator<char> sep('\0', ',', '"');
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            Tokenizer tok(line, sep);
            rows.emplace_back(tok.begin(), tok.end());
        } catch (const boost::escaped_list_error &e) {
            throw FormatError("bad CSV line '" + line + "': " + e.what());
        }
    }
    return rows;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_line(const CsvRow &fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + '\n';
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_optional(const std::optional<double> &v) { return v ? format_double(*v) : "undefined"; }

double parse_double(std::string_view s) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw FormatError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::optional<double> parse_optional(std::string_view s) {
    if (s == "undefined") return std::nullopt;
    return parse_double(s);
}

} // namespace qnnrobust
