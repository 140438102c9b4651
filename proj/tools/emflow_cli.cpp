// Command-line front end: single solves, sweeps, pole tables, the 2D study
// and the verification suite. Exit codes: 0 success, 1 verification failure,
// 2 configuration error, 3 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "emflow/banded.hpp"
#include "emflow/config.hpp"
#include "emflow/runner.hpp"

namespace {

struct CliFlags {
    std::string config_path;
    std::string out_dir;
    std::string mode;
    int order = 0;
    double pe = 0.0;
    double dz = 0.0;
    bool pe_set = false;
    bool dz_set = false;
    bool plot = false;
};

emflow::cli::RunConfig build_config(const CliFlags& flags) {
    emflow::cli::RunConfig cfg;
    if (!flags.config_path.empty())
        cfg = emflow::cli::config_from_pairs(emflow::cli::parse_config_file(flags.config_path));
    // flags win over file values
    if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
    if (!flags.mode.empty()) cfg.mode = emflow::cli::parse_mode(flags.mode);
    if (flags.order != 0) cfg.order = flags.order;
    if (flags.pe_set) cfg.pe = flags.pe;
    if (flags.dz_set) cfg.dz = flags.dz;
    if (flags.plot) cfg.plot = true;
    cfg.resolve();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabilized Galerkin FEM solver for flowmeter convection-diffusion"};
    app.require_subcommand(1);

    CliFlags flags;
    double perturbation = 0.0;
    for (auto* sub : {app.add_subcommand("solve1d", "solve the 1D problem and emit its table"),
                      app.add_subcommand("sweep-error", "peak-error sweep over Peclet numbers"),
                      app.add_subcommand("poles", "transfer-function pole/zero table"),
                      app.add_subcommand("solve2d", "2D plate-channel study"),
                      app.add_subcommand("verify", "run the acceptance criteria")}) {
        sub->add_option("--config", flags.config_path, "config file (sectioned key = value)");
        sub->add_option("--out", flags.out_dir, "output directory");
        sub->add_option("--mode", flags.mode, "input mode: bx or asy");
        sub->add_option("--order", flags.order, "element order: 1 or 2")
            ->check(CLI::IsMember({1, 2}));
        sub->add_option("--pe", flags.pe, "target Peclet number (derives u_z)")
            ->each([&](const std::string&) { flags.pe_set = true; });
        sub->add_option("--dz", flags.dz, "mesh spacing")
            ->each([&](const std::string&) { flags.dz_set = true; });
        sub->add_flag("--plot", flags.plot, "also write SVG line plots");
    }
    app.get_subcommand("verify")
        ->add_option("--perturb-stencil", perturbation,
                     "test hook: perturb one stencil coefficient")
        ->group("");  // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = build_config(flags);
        if (app.got_subcommand("solve1d")) {
            const auto artifact = emflow::cli::cmd_solve1d(cfg);
            std::printf("wrote %s\n", artifact.csv.string().c_str());
            if (artifact.plot) std::printf("wrote %s\n", artifact.plot->string().c_str());
        } else if (app.got_subcommand("sweep-error")) {
            const auto artifact = emflow::cli::cmd_sweep_error(cfg);
            std::printf("wrote %s\n", artifact.csv.string().c_str());
            if (artifact.plot) std::printf("wrote %s\n", artifact.plot->string().c_str());
        } else if (app.got_subcommand("poles")) {
            const auto artifact = emflow::cli::cmd_poles(cfg);
            std::printf("wrote %s\n", artifact.csv.string().c_str());
        } else if (app.got_subcommand("solve2d")) {
            for (const auto& artifact : emflow::cli::cmd_solve2d(cfg))
                std::printf("wrote %s\n", artifact.csv.string().c_str());
        } else if (app.got_subcommand("verify")) {
            emflow::cli::VerifyOptions opts;
            opts.stencil_perturbation = perturbation;
            const auto results = emflow::cli::run_verify(cfg, cfg.out_dir, opts);
            for (const auto& res : results)
                std::printf("%-4s %-4s %s (%s)\n", res.id.c_str(),
                            res.passed ? "pass" : "FAIL", res.name.c_str(), res.detail.c_str());
            if (!emflow::cli::all_passed(results)) {
                std::printf("verification FAILED\n");
                return 1;
            }
            std::printf("verification passed: %zu criteria\n", results.size());
        }
    } catch (const emflow::cli::ConfigError& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return 2;
    } catch (const emflow::SolverError& err) {
        std::fprintf(stderr, "solver failure: %s\n", err.what());
        return 3;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 3;
    }
    return 0;
}
