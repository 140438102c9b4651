#ifndef EMFLOW_CSV_HPP
#define EMFLOW_CSV_HPP

/// @file csv.hpp
/// @brief Deterministic CSV emission: shortest round-trip float formatting,
///        a config-hash metadata block, and an optional SVG line plot.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace emflow::csv {

/// Shortest decimal that round-trips to the same double (17 significant
/// digits at most). Locale independent.
std::string format_double(double value);

/// FNV-1a 64-bit hash, used as the config fingerprint embedded in artifacts.
std::uint64_t fnv1a(std::string_view text);

std::string hash_hex(std::uint64_t hash);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
};

/// CSV file plus the metadata comment block that fingerprints its config.
struct FigureArtifact {
    std::string name;          ///< file stem
    std::string figure_label;  ///< which reference figure this reproduces
    std::string config_hash;   ///< hex fingerprint of the canonical config
    Table table;
};

/// Write `<dir>/<name>.csv`; returns the path. Byte-identical output for
/// identical artifacts.
std::filesystem::path write_csv(const FigureArtifact& artifact, const std::filesystem::path& dir);

/// Minimal self-contained SVG line plot of selected columns against column
/// x_col; written next to the CSV as `<name>.svg`.
std::filesystem::path write_svg_plot(const FigureArtifact& artifact,
                                     const std::filesystem::path& dir, std::size_t x_col,
                                     const std::vector<std::size_t>& y_cols);

}  // namespace emflow::csv

#endif  // EMFLOW_CSV_HPP
