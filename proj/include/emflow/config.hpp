#ifndef EMFLOW_CONFIG_HPP
#define EMFLOW_CONFIG_HPP

/// @file config.hpp
/// @brief Run configuration: a flat sectioned key=value file, command-line
///        overrides, and the consistency rules tying Pe, dz and u_z together.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emflow/core.hpp"

namespace emflow::cli {

/// Invalid or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Fully resolved run configuration. Defaults reproduce the standard 1D
/// scenario: L = 20 m window [8, 12] m, B = 1 T, dz = 0.25 m, and the
/// material constants mu = 4*pi*1e-7 H/m, sigma = 7.21e6 S/m.
struct RunConfig {
    PhysicalParams params{4.0e-7 * 3.14159265358979323846, 7.21e6, 10.0};
    AppliedField field{8.0, 12.0, 1.0, 20.0};
    double dz = 0.25;
    int order = 1;
    InputMode mode = InputMode::vector_potential;
    std::optional<double> pe;  ///< when set, u_z is derived as 2*pe/(mu*sigma*dz)

    // sweep grid (log-spaced unless an explicit list is given)
    std::vector<double> pe_list;
    double sweep_min = 1.05;
    double sweep_max = 1000.0;
    int sweep_count = 50;

    // 2D study
    std::vector<double> d_list{0.1, 0.2, 0.4};
    double u_z_2d = 10.0;
    double target_pe_2d = 0.35;
    double window_lo_frac = 0.4;  ///< window start as a fraction of the 10d span
    double window_hi_frac = 0.6;
    double plate_thickness = 0.0;

    std::string out_dir = "out";
    bool plot = false;

    /// Apply the Pe/dz/u_z consistency rule and validate everything that can
    /// be validated without running; throws ConfigError.
    void resolve();

    /// Number of mesh nodes implied by field.L and dz.
    std::size_t n_nodes() const;

    Mesh1D mesh() const { return Mesh1D{dz, n_nodes(), order}; }

    /// Canonical serialization: sorted key=value lines. Identical configs
    /// serialize to identical bytes; the config hash is taken over this.
    std::string canonical() const;
};

/// Key=value pairs of a sectioned config file, keyed as "section.key".
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Same, from text (for tests).
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Build a RunConfig from parsed pairs; unknown keys are errors.
RunConfig config_from_pairs(const std::map<std::string, std::string>& pairs);

InputMode parse_mode(const std::string& text);
const char* mode_name(InputMode mode);

std::vector<double> parse_double_list(const std::string& text);

/// Log-spaced sweep grid from the config (or its explicit pe_list).
std::vector<double> sweep_grid(const RunConfig& cfg);

}  // namespace emflow::cli

#endif  // EMFLOW_CONFIG_HPP
