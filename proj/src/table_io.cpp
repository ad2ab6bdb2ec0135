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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "pudisc/errors.hpp"
#include "pudisc/table.hpp"

namespace pudisc {
namespace {

std::string to_chars_string(double value, std::chars_format fmt, int precision) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, fmt, precision);
    return std::string(buf.data(), res.ptr);
}

std::string coord(double v) { return to_chars_string(v, std::chars_format::fixed, 2); }
std::string tick_label(double v) {
    if (std::abs(v) < 1e-12) {
        v = 0.0;
    }
    return to_chars_string(v, std::chars_format::general, 4);
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::size_t Table::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw std::out_of_range("no column named " + std::string(name));
    }
    return static_cast<std::size_t>(it - columns.begin());
}

const std::string& Table::x_column() const {
    return columns.at(series_column.empty() ? 0 : 1);
}

Format parse_format(std::string_view text) {
    if (text == "csv") {
        return Format::kCsv;
    }
    if (text == "svg") {
        return Format::kSvg;
    }
    throw std::invalid_argument("unknown output format '" + std::string(text) + "'");
}

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";  // drops the sign of -0
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_number(row[c]);
        }
        out << '\n';
    }
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    write_csv(table, out);
    return out.str();
}

void write_svg(const Table& table, std::ostream& out) {
    constexpr double kWidth = 720, kHeight = 450;
    constexpr double kLeft = 70, kRight = 190, kTop = 40, kBottom = 50;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    const std::size_t xc = table.column(table.x_column());
    const bool has_series = !table.series_column.empty();
    const std::size_t sc = has_series ? table.column(table.series_column) : 0;

    double xmin = 0, xmax = 1;
    if (!table.rows.empty()) {
        xmin = xmax = table.rows.front()[xc];
        for (const auto& r : table.rows) {
            xmin = std::min(xmin, r[xc]);
            xmax = std::max(xmax, r[xc]);
        }
    }
    if (xmax == xmin) {
        xmin -= 1;
        xmax += 1;
    }
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - std::clamp(y, 0.0, 1.0)) * plot_h; };

    // Group rows by series value, in first-appearance order.
    std::vector<double> series_values;
    std::map<double, std::vector<const std::vector<double>*>> groups;
    for (const auto& r : table.rows) {
        const double key = has_series ? r[sc] : 0.0;
        if (!groups.count(key)) {
            series_values.push_back(key);
        }
        groups[key].push_back(&r);
    }

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << coord(kLeft) << "\" y=\"24\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << xml_escape(table.title) << "</text>\n";

    // Axes and ticks.
    out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    out << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\""
        << coord(plot_w) << "\" height=\"" << coord(plot_h) << "\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double gx = kLeft + plot_w * i / 5.0;
        const double gy = kTop + plot_h * i / 5.0;
        out << "<line x1=\"" << coord(gx) << "\" y1=\"" << coord(kTop + plot_h) << "\" x2=\""
            << coord(gx) << "\" y2=\"" << coord(kTop + plot_h + 5) << "\"/>\n";
        out << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(gy) << "\" x2=\""
            << coord(kLeft) << "\" y2=\"" << coord(gy) << "\"/>\n";
    }
    out << "</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        out << "<text x=\"" << coord(kLeft + plot_w * i / 5.0) << "\" y=\""
            << coord(kTop + plot_h + 18) << "\" text-anchor=\"middle\">" << tick_label(xv)
            << "</text>\n";
        out << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(kTop + plot_h * i / 5.0 + 4)
            << "\" text-anchor=\"end\">" << tick_label(1.0 - i / 5.0) << "</text>\n";
    }
    out << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"" << coord(kHeight - 10)
        << "\" text-anchor=\"middle\">" << xml_escape(table.x_column()) << "</text>\n";
    out << "</g>\n";

    // Data: analytic columns as polylines, measured fractions as markers.
    std::size_t color = 0;
    double legend_y = kTop + 10;
    for (double key : series_values) {
        const auto& rows = groups[key];
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const std::string& name = table.columns[c];
            const bool line = starts_with(name, "analytic");
            const bool marker = starts_with(name, "p_");
            if (!line && !marker) {
                continue;
            }
            const char* stroke = kPalette[color++ % kPalette.size()];
            if (line) {
                out << "<polyline fill=\"none\" stroke=\"" << stroke
                    << "\" stroke-width=\"1.5\" points=\"";
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    out << (i ? " " : "") << coord(px((*rows[i])[xc])) << ','
                        << coord(py((*rows[i])[c]));
                }
                out << "\"/>\n";
            } else {
                std::size_t err = table.columns.size();
                const std::string err_name = "stderr_" + name.substr(2);
                for (std::size_t e = 0; e < table.columns.size(); ++e) {
                    if (table.columns[e] == err_name) {
                        err = e;
                    }
                }
                out << "<g fill=\"" << stroke << "\" stroke=\"" << stroke << "\">\n";
                for (const auto* r : rows) {
                    const double x = px((*r)[xc]);
                    const double y = (*r)[c];
                    if (err < table.columns.size()) {
                        const double s = (*r)[err];
                        out << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(py(y - s))
                            << "\" x2=\"" << coord(x) << "\" y2=\"" << coord(py(y + s))
                            << "\"/>\n";
                    }
                    out << "<circle cx=\"" << coord(x) << "\" cy=\"" << coord(py(y))
                        << "\" r=\"2.5\"/>\n";
                }
                out << "</g>\n";
            }
            std::string label = name;
            if (has_series) {
                label += " (" + table.series_column + "=" + format_number(key) + ")";
            }
            out << "<text x=\"" << coord(kWidth - kRight + 10) << "\" y=\"" << coord(legend_y)
                << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"" << stroke << "\">"
                << xml_escape(label) << "</text>\n";
            legend_y += 13;
        }
    }
    out << "</svg>\n";
}

std::string to_svg(const Table& table) {
    std::ostringstream out;
    write_svg(table, out);
    return out.str();
}

void emit(const Table& table, Format format, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    if (format == Format::kCsv) {
        write_csv(table, file);
    } else {
        write_svg(table, file);
    }
    file.flush();
    if (!file) {
        throw IoError("failed writing " + path.string());
    }
}

}  // namespace pudisc
