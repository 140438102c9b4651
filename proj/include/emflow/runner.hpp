#ifndef EMFLOW_RUNNER_HPP
#define EMFLOW_RUNNER_HPP

/// @file runner.hpp
/// @brief Experiment orchestration behind the CLI subcommands: single solves,
///        sweeps, pole tables, the 2D study and the verification suite.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "emflow/config.hpp"
#include "emflow/csv.hpp"

namespace emflow::cli {

struct EmittedArtifact {
    std::filesystem::path csv;
    std::optional<std::filesystem::path> plot;
};

/// Solve the configured 1D problem and emit the solution table: nodal A_y,
/// edge b_x, the continuum reference, the discrete closed-form oracle and
/// per-node errors.
EmittedArtifact cmd_solve1d(const RunConfig& cfg);

/// Peak-error sweep over the Peclet grid: analytic formulas and measured
/// amplitudes from actual solves, side by side.
EmittedArtifact cmd_sweep_error(const RunConfig& cfg);

/// Transfer-function table: poles, zeros, cancellation residual and
/// classification for both input modes over the Peclet grid. Pe = 1 rows are
/// flagged rather than fatal.
EmittedArtifact cmd_poles(const RunConfig& cfg);

/// 2D plate-channel study over the configured gap list: centerline profiles,
/// field snapshots and a metrics table.
std::vector<EmittedArtifact> cmd_solve2d(const RunConfig& cfg);

struct CriterionResult {
    std::string id;
    std::string name;
    bool passed;
    std::string detail;  ///< deterministic; no wall-clock values
};

struct VerifyOptions {
    /// Test hook: added to one interior diagonal coefficient of the
    /// criterion-1 system before solving; nonzero values must break the
    /// oracle-equivalence criterion.
    double stencil_perturbation = 0.0;
};

/// Run the acceptance criteria, emit verify_report.csv plus the determinism
/// artifact bundle under out_dir, and return one result per criterion.
std::vector<CriterionResult> run_verify(const RunConfig& cfg,
                                        const std::filesystem::path& out_dir,
                                        const VerifyOptions& opts = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace emflow::cli

#endif  // EMFLOW_RUNNER_HPP
