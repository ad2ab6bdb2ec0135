// Copyright 2026 The pudisc Authors
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

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pudisc {

/// Numeric result table. The first column is the x axis unless
/// series_column names a leading grouping column.
struct Table {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string series_column;

    /// Throws std::out_of_range for an unknown name.
    std::size_t column(std::string_view name) const;
    const std::string& x_column() const;
};

enum class Format { kCsv, kSvg };

/// Throws std::invalid_argument for anything but "csv" or "svg".
Format parse_format(std::string_view text);

/// Shortest round-trip decimal with '.' separator, independent of locale.
std::string format_number(double value);

/// Header row plus one line per row, comma separated, LF endings.
void write_csv(const Table& table, std::ostream& out);
std::string to_csv(const Table& table);

/// Standalone SVG line chart: analytic_* columns as lines, p_* columns as
/// markers with stderr_* error bars. No external references.
void write_svg(const Table& table, std::ostream& out);
std::string to_svg(const Table& table);

/// Writes the table to path. Throws IoError when the file cannot be written.
void emit(const Table& table, Format format, const std::filesystem::path& path);

}  // namespace pudisc
