#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "emflow/analytic.hpp"
#include "emflow/fem1d.hpp"

using namespace emflow;
using namespace emflow::fem1d;

namespace {

const AppliedField kField{8.0, 12.0, 1.0, 20.0};

PhysicalParams params_for_pe(double pe, double dz) {
    PhysicalParams p{4.0e-7 * M_PI, 7.21e6, 0.0};
    p.u_z = 2.0 * pe / (p.mu * p.sigma * dz);
    return p;
}

// reference configuration: field window reconstructed from the
// sub-domain interval counts
struct ReferenceConfig {
    Mesh1D mesh;
    AppliedField field;
    PhysicalParams params;
};

ReferenceConfig reference_config(double pe, double dz, int m_b, int m_c, int m_d, InputMode mode) {
    const int ramp = (mode == InputMode::flux_density) ? 1 : 2;
    const int n_a = m_b + 1;
    const int n_b = (mode == InputMode::flux_density) ? m_b + m_c + 1 : m_b + m_c + 3;
    const int last = m_b + m_c + m_d + 2 * ramp;
    ReferenceConfig cfg{Mesh1D{dz, static_cast<std::size_t>(last + 1), 1},
                     AppliedField{n_a * dz, n_b * dz, 1.0, last * dz}, params_for_pe(pe, dz)};
    return cfg;
}

double max_rel_err(const std::vector<double>& got, const std::vector<double>& want) {
    double scale = 0.0, err = 0.0;
    for (double v : want) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < got.size(); ++i) err = std::max(err, std::abs(got[i] - want[i]));
    return err / scale;
}

}  // namespace

TEST_SUITE("fem1d") {

TEST_CASE("linear assembly reproduces the classical stencil") {
    const Mesh1D mesh{0.25, 81, 1};
    SUBCASE("pure diffusion rows at Pe = 0") {
        auto sys = assemble_linear(mesh, params_for_pe(0.0, mesh.dz), kField,
                                   InputMode::flux_density);
        for (std::size_t n : {1ul, 40ul, 79ul}) {
            CHECK(sys.matrix.get(n, n - 1) == doctest::Approx(-1.0));
            CHECK(sys.matrix.get(n, n) == doctest::Approx(2.0));
            CHECK(sys.matrix.get(n, n + 1) == doctest::Approx(-1.0));
            CHECK(sys.rhs[n] == 0.0);
        }
        const auto sol = solve_banded(apply_boundary_conditions(std::move(sys)));
        for (double v : sol.a_y) CHECK(v == 0.0);
    }
    SUBCASE("interior row at Pe = 3 is (-4, 2, 2)") {
        const auto sys =
            assemble_linear(mesh, params_for_pe(3.0, mesh.dz), kField, InputMode::flux_density);
        CHECK(sys.matrix.get(40, 39) == doctest::Approx(-4.0));
        CHECK(sys.matrix.get(40, 40) == doctest::Approx(2.0));
        CHECK(sys.matrix.get(40, 41) == doctest::Approx(2.0));
    }
    SUBCASE("vector-potential RHS equals the flux-density RHS inside the magnet") {
        const double pe = 7.0;
        const auto bx_sys =
            assemble_linear(mesh, params_for_pe(pe, mesh.dz), kField, InputMode::flux_density);
        const auto asy_sys = assemble_linear(mesh, params_for_pe(pe, mesh.dz), kField,
                                             InputMode::vector_potential);
        for (std::size_t n = 33; n <= 47; ++n)  // strictly interior to [32, 48]
            CHECK(asy_sys.rhs[n] == doctest::Approx(bx_sys.rhs[n]).epsilon(1e-12));
        // and equals 2*Pe*dz*B there
        CHECK(asy_sys.rhs[40] == doctest::Approx(2.0 * pe * mesh.dz * kField.B).epsilon(1e-12));
    }
    SUBCASE("the stencil is the central-difference FDM stencil") {
        const double pe = 5.5;
        const auto sys =
            assemble_linear(mesh, params_for_pe(pe, mesh.dz), kField, InputMode::flux_density);
        const auto bx_nodes = sample_applied_field(mesh, kField);
        for (std::size_t n = 1; n + 1 < mesh.n_nodes; ++n) {
            CHECK(sys.matrix.get(n, n - 1) == doctest::Approx(-1.0 - pe).epsilon(1e-14));
            CHECK(sys.matrix.get(n, n) == doctest::Approx(2.0).epsilon(1e-14));
            CHECK(sys.matrix.get(n, n + 1) == doctest::Approx(-1.0 + pe).epsilon(1e-14));
            CHECK(sys.rhs[n] ==
                  doctest::Approx(2.0 * pe * mesh.dz * bx_nodes[n]).epsilon(1e-14));
        }
    }
    SUBCASE("rejected inputs") {
        CHECK_THROWS_AS(assemble_linear(Mesh1D{0.25, 81, 2}, params_for_pe(1.0, 0.25), kField,
                                        InputMode::flux_density),
                        std::invalid_argument);
        CHECK_THROWS_AS(assemble_linear(mesh, params_for_pe(1.0, 0.25),
                                        AppliedField{8.1, 12.0, 1.0, 20.0},
                                        InputMode::flux_density),
                        std::invalid_argument);
    }
}

TEST_CASE("boundary conditions") {
    const Mesh1D mesh{0.25, 81, 1};
    auto sys = apply_boundary_conditions(
        assemble_linear(mesh, params_for_pe(12.0, mesh.dz), kField, InputMode::vector_potential));
    const auto sol = solve_banded(sys);
    CHECK(sol.a_y.front() == 0.0);
    CHECK(sol.a_y[80] == doctest::Approx(sol.a_y[79]).epsilon(1e-14));

    // solving without boundary conditions is rejected
    auto raw = assemble_linear(mesh, params_for_pe(12.0, mesh.dz), kField,
                               InputMode::vector_potential);
    CHECK_THROWS_AS(solve_banded(raw), std::invalid_argument);
}

TEST_CASE("banded solver basics") {
    BandedMatrix diag(4, 1);
    for (std::size_t i = 0; i < 4; ++i) diag.at(i, i) = 2.0;
    const std::vector<double> rhs{2.0, 4.0, 6.0, 8.0};
    const auto x = solve_banded_checked(diag, rhs);
    for (std::size_t i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(i + 1.0));

    BandedMatrix singular(3, 1);
    singular.at(0, 0) = 1.0;
    singular.at(1, 1) = 0.0;
    singular.at(2, 2) = 1.0;
    CHECK_THROWS_AS(solve_banded_checked(singular, std::vector<double>{1.0, 1.0, 1.0}),
                    SolverError);
}

TEST_CASE("oracle equivalence with the closed forms") {
    SUBCASE("flux density, Pe=200 (dz=0.25, m=(31,6,31))") {
        const auto cfg = reference_config(200.0, 0.25, 31, 6, 31, InputMode::flux_density);
        const auto sol = solve(cfg.mesh, cfg.params, cfg.field, InputMode::flux_density);
        const auto oracle = analytic::sample_piecewise(analytic::closed_form_solution(
            cfg.mesh, cfg.field, cfg.params, InputMode::flux_density));
        CHECK(max_rel_err(sol.a_y, oracle) < 1e-9);
    }
    SUBCASE("vector potential, Pe=300 (dz=0.33) and Pe=3 (dz=0.25)") {
        for (const auto& cfg : {reference_config(300.0, 0.33, 22, 4, 22, InputMode::vector_potential),
                                reference_config(3.0, 0.25, 30, 6, 30, InputMode::vector_potential)}) {
            const auto sol = solve(cfg.mesh, cfg.params, cfg.field, InputMode::vector_potential);
            const auto oracle = analytic::sample_piecewise(analytic::closed_form_solution(
                cfg.mesh, cfg.field, cfg.params, InputMode::vector_potential));
            CHECK(max_rel_err(sol.a_y, oracle) < 1e-9);
        }
    }
}

TEST_CASE("oracle equivalence holds across random configurations") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> pe_low(0.2, 0.9);
    std::uniform_real_distribution<double> pe_high(std::log(1.5), std::log(1e4));
    std::uniform_int_distribution<int> side(2, 30), middle(3, 15);
    for (int trial = 0; trial < 24; ++trial) {
        const double pe = (trial % 4 == 0) ? pe_low(rng) : std::exp(pe_high(rng));
        const InputMode mode =
            (trial % 2 == 0) ? InputMode::flux_density : InputMode::vector_potential;
        const auto cfg = reference_config(pe, 0.25, side(rng), middle(rng), side(rng), mode);
        const auto sol = solve(cfg.mesh, cfg.params, cfg.field, mode);
        const auto oracle = analytic::sample_piecewise(
            analytic::closed_form_solution(cfg.mesh, cfg.field, cfg.params, mode));
        CHECK(max_rel_err(sol.a_y, oracle) < 1e-9);
    }
}

TEST_CASE("gauge shift of the source potential leaves the solution unchanged") {
    const Mesh1D mesh{0.25, 81, 1};
    const double pe = 42.0;
    auto samples = sample_source_potential(mesh, kField);
    const auto base = solve_banded(
        apply_boundary_conditions(assemble_linear(mesh, pe, samples, InputMode::vector_potential)));
    for (double& s : samples) s += 17.3;
    const auto shifted = solve_banded(
        apply_boundary_conditions(assemble_linear(mesh, pe, samples, InputMode::vector_potential)));
    for (std::size_t n = 0; n < mesh.n_nodes; ++n) CHECK(base.a_y[n] == shifted.a_y[n]);
}

TEST_CASE("oscillation metrics") {
    const Mesh1D mesh{0.25, 81, 1};
    SUBCASE("solution equal to the reference yields all-zero metrics") {
        const auto sol = solve(mesh, params_for_pe(5.0, mesh.dz), kField,
                               InputMode::vector_potential);
        const auto probe = make_oscillation_probe(mesh, kField, InputMode::vector_potential);
        const auto m = oscillation_metrics(sol, sol.b_x, probe);
        CHECK(m.peak_abs_error == 0.0);
        CHECK(m.oscillation_amplitude == 0.0);
        CHECK(m.sign_change_count == 0);
    }
    SUBCASE("vector potential at Pe=3 measures the 1/8 peak") {
        const auto sol = solve(mesh, params_for_pe(3.0, mesh.dz), kField,
                               InputMode::vector_potential);
        const auto probe = make_oscillation_probe(mesh, kField, InputMode::vector_potential);
        const auto m = oscillation_metrics(sol, plateau_reference_bx(mesh, kField), probe);
        CHECK(m.oscillation_amplitude == doctest::Approx(0.125).epsilon(1e-10));
    }
    SUBCASE("flux density at Pe=3000 measures the near-unit amplitude and ratio r") {
        const auto sol =
            solve(mesh, params_for_pe(3000.0, mesh.dz), kField, InputMode::flux_density);
        const auto probe = make_oscillation_probe(mesh, kField, InputMode::flux_density);
        const auto plateau = plateau_reference_bx(mesh, kField);
        const auto m = oscillation_metrics(sol, plateau, probe);
        CHECK(m.oscillation_amplitude == doctest::Approx(0.9993335554815062).epsilon(1e-9));
        const auto ratio = error_alternation_ratio(sol, plateau, probe);
        REQUIRE(ratio.has_value());
        CHECK(*ratio == doctest::Approx((-1.0 - 3000.0) / (-1.0 + 3000.0)).epsilon(1e-6));
        CHECK(*ratio < 0.0);  // alternating signs
    }
    SUBCASE("stability invariant for Pe >= 30") {
        for (double pe : {30.0, 300.0, 3000.0}) {
            const auto sol = solve(mesh, params_for_pe(pe, mesh.dz), kField,
                                   InputMode::vector_potential);
            const auto probe = make_oscillation_probe(mesh, kField, InputMode::vector_potential);
            const auto m =
                oscillation_metrics(sol, plateau_reference_bx(mesh, kField), probe);
            const double bound = kField.B * (pe - 1.0) / ((1.0 + pe) * (1.0 + pe));
            CHECK(m.sign_change_count == 0);
            CHECK(m.oscillation_amplitude <= bound * (1.0 + 1e-9));
        }
    }
    SUBCASE("flux-density errors alternate through the magnet for Pe > 1") {
        const auto sol =
            solve(mesh, params_for_pe(40.0, mesh.dz), kField, InputMode::flux_density);
        const auto plateau = plateau_reference_bx(mesh, kField);
        const auto probe = make_oscillation_probe(mesh, kField, InputMode::flux_density);
        int alternations = 0;
        for (std::size_t j = probe.last_magnet_edge - 7; j < probe.last_magnet_edge; ++j) {
            const double e0 = sol.b_x[j] - plateau[j];
            const double e1 = sol.b_x[j + 1] - plateau[j + 1];
            if (e0 * e1 < 0.0) ++alternations;
        }
        CHECK(alternations == 7);
    }
}

TEST_CASE("mode equivalence in the continuum limit (fixed physics)") {
    // k = 3.2 per metre; Pe = k*dz/2 stays below 1 on all meshes
    PhysicalParams params{4.0e-7 * M_PI, 7.21e6, 0.0};
    params.u_z = 3.2 / (params.mu * params.sigma);
    std::vector<double> err_asy, err_bx;
    for (int level = 0; level < 3; ++level) {
        const double dz = 0.25 / std::pow(2.0, level);
        const Mesh1D mesh{dz, static_cast<std::size_t>(std::lround(20.0 / dz)) + 1, 1};
        const auto ref = sample_ode_analytic(mesh, kField, params);
        for (InputMode mode : {InputMode::vector_potential, InputMode::flux_density}) {
            const auto sol = solve(mesh, params, kField, mode);
            double err = 0.0;
            for (std::size_t n = 0; n < ref.size(); ++n)
                err = std::max(err, std::abs(sol.a_y[n] - ref[n]));
            (mode == InputMode::vector_potential ? err_asy : err_bx).push_back(err);
        }
    }
    // the proposed scheme converges at second order
    for (std::size_t i = 0; i + 1 < err_asy.size(); ++i)
        CHECK(std::log2(err_asy[i] / err_asy[i + 1]) >= 1.9);
    // node-sampled step input limits the flux-density mode to first order
    for (std::size_t i = 0; i + 1 < err_bx.size(); ++i) {
        const double order = std::log2(err_bx[i] / err_bx[i + 1]);
        CHECK(order >= 0.9);
        CHECK(order <= 1.1);
    }

    // downstream plateau: b_x beyond the magnet tends to zero and A_y to the
    // constant branch of the continuum solution
    {
        const double dz = 0.0625;
        const Mesh1D mesh{dz, static_cast<std::size_t>(std::lround(20.0 / dz)) + 1, 1};
        const auto sol = solve(mesh, params, kField, InputMode::vector_potential);
        const double k = params.convection_rate();
        const double plateau = kField.B / k * (std::exp(-k * kField.b) - std::exp(-k * kField.a)) +
                               kField.B * (kField.b - kField.a);
        CHECK(std::abs(sol.b_x.back()) < 1e-3 * kField.B);
        CHECK(sol.a_y.back() == doctest::Approx(plateau).epsilon(1e-3));
    }
}

TEST_CASE("quadratic elements") {
    const Mesh1D mesh{0.25, 81, 2};
    SUBCASE("patch test: quadratic fields are reproduced exactly at Pe = 0") {
        const std::size_t n = 11;
        const double dz = 0.1;
        Mesh1D patch_mesh{dz, n, 2};
        auto sys = assemble_quadratic(patch_mesh, 0.0, std::vector<double>(n, 0.0));
        for (std::size_t e = 0; 2 * e + 2 < n; ++e) {
            const auto load = quadratic_element_load_constant(-6.0, dz);
            for (int i = 0; i < 3; ++i) sys.rhs[2 * e + static_cast<std::size_t>(i)] += load[i];
        }
        auto exact = [](double z) { return 1.0 + 2.0 * z + 3.0 * z * z; };
        sys.matrix.clear_row(0);
        sys.matrix.at(0, 0) = 1.0;
        sys.rhs[0] = exact(0.0);
        sys.matrix.clear_row(n - 1);
        sys.matrix.at(n - 1, n - 1) = 1.0;
        sys.rhs[n - 1] = exact(patch_mesh.length());
        const auto u = solve_banded_checked(sys.matrix, sys.rhs);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(u[i] - exact(i * dz)) < 1e-10);
    }
    SUBCASE("vector potential at Pe=3000 stays monotone downstream") {
        const auto sol =
            solve(mesh, params_for_pe(3000.0, mesh.dz), kField, InputMode::vector_potential);
        const auto probe = make_oscillation_probe(mesh, kField, InputMode::vector_potential);
        const auto m = oscillation_metrics(sol, plateau_reference_bx(mesh, kField), probe);
        CHECK(m.sign_change_count == 0);
        CHECK(m.oscillation_amplitude < 1e-3 * kField.B);
        // downstream plateau approaches B*(b-a) for large Pe
        CHECK(sol.a_y.back() ==
              doctest::Approx(kField.B * (kField.b - kField.a)).epsilon(1e-3));
    }
    SUBCASE("vector potential at Pe=3 stays below the linear-element amplitude") {
        const auto quad =
            solve(mesh, params_for_pe(3.0, mesh.dz), kField, InputMode::vector_potential);
        const Mesh1D lin_mesh{0.25, 81, 1};
        const auto lin =
            solve(lin_mesh, params_for_pe(3.0, mesh.dz), kField, InputMode::vector_potential);
        const auto probe = make_oscillation_probe(mesh, kField, InputMode::vector_potential);
        const auto plateau = plateau_reference_bx(mesh, kField);
        const double amp_quad = oscillation_metrics(quad, plateau, probe).oscillation_amplitude;
        const double amp_lin = oscillation_metrics(lin, plateau, probe).oscillation_amplitude;
        CHECK(amp_quad <= amp_lin);
        CHECK(amp_lin == doctest::Approx(0.125).epsilon(1e-10));
    }
    SUBCASE("flux-density mode with Gauss-integrated source converges") {
        PhysicalParams params{4.0e-7 * M_PI, 7.21e6, 0.0};
        params.u_z = 3.2 / (params.mu * params.sigma);
        const auto sol = solve(mesh, params, kField, InputMode::flux_density);
        const auto ref = sample_ode_analytic(mesh, kField, params);
        double err = 0.0;
        for (std::size_t n = 0; n < ref.size(); ++n)
            err = std::max(err, std::abs(sol.a_y[n] - ref[n]));
        CHECK(err < 0.05 * kField.B);
    }
    SUBCASE("odd interval counts are rejected for order 2") {
        CHECK_THROWS_AS(assemble_quadratic(Mesh1D{0.25, 80, 2}, 1.0,
                                           std::vector<double>(80, 0.0)),
                        std::invalid_argument);
    }
}

TEST_CASE("assembly and solve are well defined at Pe = 1") {
    // the closed form is singular at Pe = 1 but the discrete solve is not
    const Mesh1D mesh{0.25, 81, 1};
    const auto sol = solve(mesh, params_for_pe(1.0, mesh.dz), kField, InputMode::vector_potential);
    for (double v : sol.a_y) CHECK(std::isfinite(v));
    CHECK(sol.a_y.back() != 0.0);
}

}  // TEST_SUITE
