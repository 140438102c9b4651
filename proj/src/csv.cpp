#include "emflow/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace emflow::csv {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hash_hex(std::uint64_t hash) {
    char buf[17];
    for (int i = 15; i >= 0; --i) {
        buf[i] = "0123456789abcdef"[hash & 0xf];
        hash >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

void Table::add_row(std::vector<std::string> cells) {
    if (cells.size() != header.size())
        throw std::invalid_argument("Table::add_row: cell count does not match header");
    rows.push_back(std::move(cells));
}

std::filesystem::path write_csv(const FigureArtifact& artifact, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = dir / (artifact.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    out << "# config_hash=" << artifact.config_hash << "\n";
    out << "# figure=" << artifact.figure_label << "\n";
    for (std::size_t i = 0; i < artifact.table.header.size(); ++i)
        out << (i ? "," : "") << artifact.table.header[i];
    out << "\n";
    for (const auto& row : artifact.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return path;
}

namespace {

// Plot coordinates rounded to centi-pixels keep the SVG bytes deterministic.
std::string svg_coord(double v) {
    const double r = std::round(v * 100.0) / 100.0;
    return format_double(r);
}

constexpr const char* kStrokes[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};

}  // namespace

std::filesystem::path write_svg_plot(const FigureArtifact& artifact,
                                     const std::filesystem::path& dir, std::size_t x_col,
                                     const std::vector<std::size_t>& y_cols) {
    std::filesystem::create_directories(dir);
    const auto path = dir / (artifact.name + ".svg");
    const auto& table = artifact.table;

    auto cell = [&](std::size_t row, std::size_t col) {
        return std::strtod(table.rows[row][col].c_str(), nullptr);
    };
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (std::size_t rix = 0; rix < table.rows.size(); ++rix) {
        const double x = cell(rix, x_col);
        if (!std::isfinite(x)) continue;
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        for (std::size_t col : y_cols) {
            const double y = cell(rix, col);
            if (!std::isfinite(y)) continue;
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;

    const double width = 720, height = 480, margin = 60;
    auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double y) {
        return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_svg_plot: cannot open " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
        << "\" height=\"" << height - 2 * margin
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << artifact.name << " (" << artifact.figure_label << ")</text>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 15
        << "\" text-anchor=\"middle\" font-size=\"12\">" << table.header[x_col] << "</text>\n";
    std::size_t color = 0;
    for (std::size_t col : y_cols) {
        out << "<polyline fill=\"none\" stroke=\"" << kStrokes[color % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t rix = 0; rix < table.rows.size(); ++rix) {
            const double x = cell(rix, x_col);
            const double y = cell(rix, col);
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            out << (first ? "" : " ") << svg_coord(px(x)) << "," << svg_coord(py(y));
            first = false;
        }
        out << "\"/>\n";
        out << "<text x=\"" << width - margin + 5 << "\" y=\"" << margin + 16 * (color + 1)
            << "\" font-size=\"11\" fill=\"" << kStrokes[color % 6] << "\">" << table.header[col]
            << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    return path;
}

}  // namespace emflow::csv
