#include "emflow/fem1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace emflow::fem1d {

namespace {

constexpr double kGaussPoint = 0.7745966692414834;  // sqrt(3/5)
constexpr std::array<double, 3> kGaussXi{-kGaussPoint, 0.0, kGaussPoint};
constexpr std::array<double, 3> kGaussW{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

double quad_shape(int i, double xi) {
    switch (i) {
        case 0: return 0.5 * xi * (xi - 1.0);
        case 1: return 1.0 - xi * xi;
        default: return 0.5 * xi * (xi + 1.0);
    }
}

}  // namespace

std::array<std::array<double, 2>, 2> linear_element_operator(double pe) {
    // dz * (stiffness + convection) on one element
    return {{{1.0 - pe, -1.0 + pe}, {-1.0 - pe, 1.0 + pe}}};
}

std::array<std::array<double, 3>, 3> quadratic_element_convection() {
    return {{{-1.0 / 2.0, 2.0 / 3.0, -1.0 / 6.0},
             {-2.0 / 3.0, 0.0, 2.0 / 3.0},
             {1.0 / 6.0, -2.0 / 3.0, 1.0 / 2.0}}};
}

std::array<std::array<double, 3>, 3> quadratic_element_operator(double pe) {
    // dz * stiffness of a 3-node Lagrange element of length 2*dz, plus
    // 2*Pe times the reference convection matrix.
    const std::array<std::array<double, 3>, 3> k{{{7.0 / 6.0, -8.0 / 6.0, 1.0 / 6.0},
                                                  {-8.0 / 6.0, 16.0 / 6.0, -8.0 / 6.0},
                                                  {1.0 / 6.0, -8.0 / 6.0, 7.0 / 6.0}}};
    const auto c = quadratic_element_convection();
    std::array<std::array<double, 3>, 3> out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = k[i][j] + 2.0 * pe * c[i][j];
    return out;
}

std::array<double, 3> quadratic_element_load_constant(double f, double dz) {
    // consistent load of a constant source, dz-normalized
    return {f * dz * dz / 3.0, 4.0 * f * dz * dz / 3.0, f * dz * dz / 3.0};
}

BandedSystem assemble_linear(const Mesh1D& mesh, double pe, std::span<const double> input_samples,
                             InputMode mode) {
    mesh.validate();
    if (mesh.order != 1) throw std::invalid_argument("assemble_linear: mesh.order must be 1");
    if (!(pe >= 0.0)) throw std::invalid_argument("assemble_linear: pe must be non-negative");
    if (input_samples.size() != mesh.n_nodes)
        throw std::invalid_argument("assemble_linear: one input sample per node required");
    const std::size_t n = mesh.n_nodes;
    BandedSystem sys{mesh, BandedMatrix(n, 1), std::vector<double>(n, 0.0), false};
    const auto ke = linear_element_operator(pe);
    for (std::size_t e = 0; e + 1 < n; ++e)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sys.matrix.at(e + i, e + j) += ke[i][j];
    for (std::size_t node = 1; node + 1 < n; ++node) {
        sys.rhs[node] = (mode == InputMode::flux_density)
                            ? 2.0 * pe * mesh.dz * input_samples[node]
                            : pe * (input_samples[node - 1] - input_samples[node + 1]);
    }
    return sys;
}

BandedSystem assemble_linear(const Mesh1D& mesh, const PhysicalParams& params,
                             const AppliedField& field, InputMode mode) {
    const double pe = peclet(params, mesh.dz);
    const auto samples = (mode == InputMode::flux_density) ? sample_applied_field(mesh, field)
                                                           : sample_source_potential(mesh, field);
    return assemble_linear(mesh, pe, samples, mode);
}

BandedSystem assemble_quadratic(const Mesh1D& mesh, double pe,
                                std::span<const double> asy_samples) {
    mesh.validate();
    if (mesh.order != 2) throw std::invalid_argument("assemble_quadratic: mesh.order must be 2");
    if (!(pe >= 0.0)) throw std::invalid_argument("assemble_quadratic: pe must be non-negative");
    if (asy_samples.size() != mesh.n_nodes)
        throw std::invalid_argument("assemble_quadratic: one A_sy sample per node required");
    const std::size_t n = mesh.n_nodes;
    BandedSystem sys{mesh, BandedMatrix(n, 2), std::vector<double>(n, 0.0), false};
    const auto ke = quadratic_element_operator(pe);
    const auto ce = quadratic_element_convection();
    for (std::size_t e = 0; 2 * e + 2 < n; ++e) {
        const std::size_t base = 2 * e;
        for (int i = 0; i < 3; ++i) {
            double load = 0.0;
            for (int j = 0; j < 3; ++j) {
                sys.matrix.at(base + i, base + j) += ke[i][j];
                load -= 2.0 * pe * ce[i][j] * asy_samples[base + j];
            }
            sys.rhs[base + i] += load;
        }
    }
    return sys;
}

BandedSystem assemble_quadratic(const Mesh1D& mesh, const PhysicalParams& params,
                                const AppliedField& field, InputMode mode) {
    const double pe = peclet(params, mesh.dz);
    if (mode == InputMode::vector_potential)
        return assemble_quadratic(mesh, pe, sample_source_potential(mesh, field));
    // Flux-density mode: consistent source integration with 3-point Gauss.
    mesh.validate();
    if (mesh.order != 2) throw std::invalid_argument("assemble_quadratic: mesh.order must be 2");
    (void)field_node_indices(mesh, field);  // alignment check
    const std::size_t n = mesh.n_nodes;
    BandedSystem sys{mesh, BandedMatrix(n, 2), std::vector<double>(n, 0.0), false};
    const auto ke = quadratic_element_operator(pe);
    for (std::size_t e = 0; 2 * e + 2 < n; ++e) {
        const std::size_t base = 2 * e;
        const double z_mid = static_cast<double>(base + 1) * mesh.dz;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) sys.matrix.at(base + i, base + j) += ke[i][j];
            double load = 0.0;
            for (int q = 0; q < 3; ++q) {
                const double z = z_mid + kGaussXi[q] * mesh.dz;
                load += kGaussW[q] * applied_field_eval(field, z) * quad_shape(i, kGaussXi[q]);
            }
            sys.rhs[base + i] += 2.0 * pe * mesh.dz * load;
        }
    }
    return sys;
}

BandedSystem apply_boundary_conditions(BandedSystem system) {
    const std::size_t n = system.matrix.size();
    system.matrix.clear_row(0);
    system.matrix.at(0, 0) = 1.0;
    system.rhs[0] = 0.0;
    system.matrix.clear_row(n - 1);
    system.matrix.at(n - 1, n - 1) = 1.0;
    system.matrix.at(n - 1, n - 2) = -1.0;
    system.rhs[n - 1] = 0.0;
    system.bcs_applied = true;
    return system;
}

Solution1D solve_banded(const BandedSystem& system) {
    if (!system.bcs_applied)
        throw std::invalid_argument("solve_banded: apply_boundary_conditions first");
    Solution1D sol;
    sol.a_y = solve_banded_checked(system.matrix, system.rhs);
    sol.b_x = reaction_field_forward_diff(sol.a_y, system.mesh.dz);
    return sol;
}

Solution1D solve(const Mesh1D& mesh, const PhysicalParams& params, const AppliedField& field,
                 InputMode mode) {
    auto sys = (mesh.order == 1) ? assemble_linear(mesh, params, field, mode)
                                 : assemble_quadratic(mesh, params, field, mode);
    return solve_banded(apply_boundary_conditions(std::move(sys)));
}

OscillationProbe make_oscillation_probe(const Mesh1D& mesh, const AppliedField& field,
                                        InputMode mode) {
    const auto [n_a, n_b] = field_node_indices(mesh, field);
    OscillationProbe probe{};
    if (mode == InputMode::flux_density) {
        probe.first_magnet_edge = n_a;
        probe.last_magnet_edge = n_b - 1;
    } else {
        probe.first_magnet_edge = n_a + 1;
        probe.last_magnet_edge = n_b - 2;
    }
    if (probe.last_magnet_edge < probe.first_magnet_edge)
        throw std::invalid_argument("make_oscillation_probe: magnet window too narrow");
    return probe;
}

std::vector<double> plateau_reference_bx(const Mesh1D& mesh, const AppliedField& field) {
    const auto [n_a, n_b] = field_node_indices(mesh, field);
    std::vector<double> ref(mesh.n_nodes - 1, 0.0);
    for (std::size_t j = n_a; j < n_b; ++j) ref[j] = -field.B;
    return ref;
}

std::vector<double> continuum_reference_bx(const Mesh1D& mesh, const AppliedField& field,
                                           const PhysicalParams& params) {
    const auto nodes = sample_ode_analytic(mesh, field, params);
    return reaction_field_forward_diff(nodes, mesh.dz);
}

OscillationMetrics oscillation_metrics(const Solution1D& sol, std::span<const double> reference_bx,
                                       const OscillationProbe& probe) {
    const std::size_t n_edges = sol.b_x.size();
    if (reference_bx.size() != n_edges)
        throw std::invalid_argument("oscillation_metrics: reference length mismatch");
    if (probe.last_magnet_edge >= n_edges)
        throw std::invalid_argument("oscillation_metrics: probe window outside solution");
    OscillationMetrics m{0.0, 0, 0.0, 0};
    double scale = 0.0;
    for (std::size_t j = 0; j < n_edges; ++j) {
        const double e = std::abs(sol.b_x[j] - reference_bx[j]);
        scale = std::max(scale, std::abs(reference_bx[j]));
        if (e > m.peak_abs_error) {
            m.peak_abs_error = e;
            m.peak_error_edge = j;
        }
    }
    for (std::size_t j = probe.first_magnet_edge; j <= probe.last_magnet_edge; ++j)
        m.oscillation_amplitude =
            std::max(m.oscillation_amplitude, std::abs(sol.b_x[j] - reference_bx[j]));
    // Downstream alternations; errors at the noise floor carry no sign.
    const double floor = 1e-9 * std::max(scale, 1e-30);
    int prev_sign = 0;
    for (std::size_t j = probe.last_magnet_edge + 1; j < n_edges; ++j) {
        const double e = sol.b_x[j] - reference_bx[j];
        const int sign = (std::abs(e) <= floor) ? 0 : (e > 0.0 ? 1 : -1);
        if (sign != 0 && prev_sign != 0 && sign != prev_sign) ++m.sign_change_count;
        if (sign != 0) prev_sign = sign;
    }
    return m;
}

std::optional<double> error_alternation_ratio(const Solution1D& sol,
                                              std::span<const double> reference_bx,
                                              const OscillationProbe& probe) {
    if (reference_bx.size() != sol.b_x.size())
        throw std::invalid_argument("error_alternation_ratio: reference length mismatch");
    const std::size_t last = probe.last_magnet_edge;
    const std::size_t first = std::max(probe.first_magnet_edge, (last > 7) ? last - 7 : 0);
    std::vector<double> ratios;
    for (std::size_t j = first; j < last; ++j) {
        const double e0 = sol.b_x[j] - reference_bx[j];
        const double e1 = sol.b_x[j + 1] - reference_bx[j + 1];
        if (std::abs(e0) > 1e-14 * std::abs(reference_bx[j] != 0.0 ? reference_bx[j] : 1.0))
            ratios.push_back(e1 / e0);
    }
    if (ratios.size() < 2) return std::nullopt;
    std::sort(ratios.begin(), ratios.end());
    return ratios[ratios.size() / 2];
}

}  // namespace emflow::fem1d
