#ifndef EMFLOW_CORE_HPP
#define EMFLOW_CORE_HPP

/// @file core.hpp
/// @brief Physical parameters, dimensionless numbers, applied-field and
///        source-potential evaluation, the continuum reference solution and
///        reaction-field post-processing shared by the 1D/2D solvers.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace emflow {

/// Fluid/material constants of the moving-conductor problem.
///
/// The convection rate constant k = mu*sigma*u_z and the element Peclet
/// number Pe = k*dz/2 both derive from these three values.
struct PhysicalParams {
    double mu;     ///< magnetic permeability [H/m]
    double sigma;  ///< electrical conductivity [S/m]
    double u_z;    ///< axial velocity [m/s]

    /// mu*sigma*u_z, the inverse length scale of the reaction field [1/m].
    double convection_rate() const { return mu * sigma * u_z; }

    void validate() const {
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw std::invalid_argument("PhysicalParams: mu must be positive and finite");
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw std::invalid_argument("PhysicalParams: sigma must be positive and finite");
        if (!(u_z >= 0.0) || !std::isfinite(u_z))
            throw std::invalid_argument("PhysicalParams: u_z must be non-negative and finite");
    }
};

/// Piecewise-constant applied flux density: zero outside [a, b], B inside.
struct AppliedField {
    double a;  ///< field start position [m]
    double b;  ///< field end position [m]
    double B;  ///< flux density magnitude inside the window [T]
    double L;  ///< domain length [m]

    void validate() const {
        if (!(0.0 < a && a < b && b < L))
            throw std::invalid_argument("AppliedField: requires 0 < a < b < L");
        if (!std::isfinite(B))
            throw std::invalid_argument("AppliedField: B must be finite");
    }
};

/// Uniform 1D mesh with node n at z = n*dz.
struct Mesh1D {
    double dz;            ///< node spacing [m]
    std::size_t n_nodes;  ///< node count
    int order;            ///< element order, 1 or 2

    double length() const { return dz * static_cast<double>(n_nodes - 1); }

    void validate() const {
        if (!(dz > 0.0) || !std::isfinite(dz))
            throw std::invalid_argument("Mesh1D: dz must be positive and finite");
        if (n_nodes < 3)
            throw std::invalid_argument("Mesh1D: need at least 3 nodes");
        if (order != 1 && order != 2)
            throw std::invalid_argument("Mesh1D: order must be 1 or 2");
        if (order == 2 && (n_nodes - 1) % 2 != 0)
            throw std::invalid_argument("Mesh1D: order 2 requires an even interval count");
    }
};

/// Nodal vector potential plus the edge-wise reaction flux density derived
/// from it by forward differences; b_x has one entry per element edge.
struct Solution1D {
    std::vector<double> a_y;  ///< nodal A_y [Wb/m]
    std::vector<double> b_x;  ///< edge reaction field [T], size a_y.size()-1
};

/// How the applied field enters the discrete right-hand side.
enum class InputMode {
    flux_density,      ///< B_x sampled at nodes
    vector_potential,  ///< A_sy sampled at nodes, differenced by the stencil
};

/// Element Peclet number Pe = mu*sigma*u_z*dz/2.
inline double peclet(const PhysicalParams& params, double dz) {
    params.validate();
    if (!(dz > 0.0)) throw std::invalid_argument("peclet: dz must be positive");
    return 0.5 * params.convection_rate() * dz;
}

/// Magnetic Reynolds number R_m = mu*sigma*u_z*D_h.
///
/// Related to the element Peclet number by Pe = R_m*dz/(2*D_h).
inline double magnetic_reynolds(const PhysicalParams& params, double d_h) {
    params.validate();
    if (!(d_h > 0.0)) throw std::invalid_argument("magnetic_reynolds: d_h must be positive");
    return params.convection_rate() * d_h;
}

/// B_x(z): 0 for z < a, B for a <= z <= b, 0 for z > b.
inline double applied_field_eval(const AppliedField& field, double z) {
    field.validate();
    if (!(z >= 0.0 && z <= field.L))
        throw std::out_of_range("applied_field_eval: z outside [0, L]");
    return (z >= field.a && z <= field.b) ? field.B : 0.0;
}

/// Source vector potential A_sy(z) with the gauge A_sy(0) = 0, so that
/// B_x = -dA_sy/dz. Piecewise linear: 0, then -B*(z-a), then -B*(b-a).
inline double source_potential_eval(const AppliedField& field, double z) {
    field.validate();
    if (!(z >= 0.0 && z <= field.L))
        throw std::out_of_range("source_potential_eval: z outside [0, L]");
    if (z < field.a) return 0.0;
    if (z <= field.b) return -field.B * (z - field.a);
    return -field.B * (field.b - field.a);
}

/// Closed-form solution of -A_y'' + k A_y' = k B_x with A_y(0) = 0 and
/// A_y'(L) = 0, where k = mu*sigma*u_z. Requires u_z > 0.
inline double ode_analytic_solution(const AppliedField& field, const PhysicalParams& params,
                                    double z) {
    field.validate();
    params.validate();
    if (params.u_z == 0.0)
        throw std::domain_error("ode_analytic_solution: closed form needs u_z > 0");
    if (!(z >= 0.0 && z <= field.L))
        throw std::out_of_range("ode_analytic_solution: z outside [0, L]");
    const double k = params.convection_rate();
    const double B = field.B, a = field.a, b = field.b;
    if (z < a)
        return B / k * (std::exp(-k * b) - std::exp(-k * (b - z)) - std::exp(-k * a) +
                        std::exp(-k * (a - z)));
    if (z <= b)
        return B / k * (1.0 - std::exp(-k * a) + std::exp(-k * b) - std::exp(-k * (b - z))) +
               B * (z - a);
    return B / k * (std::exp(-k * b) - std::exp(-k * a)) + B * (b - a);
}

/// Reaction flux density on element edges: b_x(n) = -(A_y(n+1) - A_y(n))/dz.
inline std::vector<double> reaction_field_forward_diff(std::span<const double> a_y, double dz) {
    if (a_y.size() < 2)
        throw std::invalid_argument("reaction_field_forward_diff: need at least 2 nodes");
    if (!(dz > 0.0)) throw std::invalid_argument("reaction_field_forward_diff: dz must be positive");
    std::vector<double> b_x(a_y.size() - 1);
    for (std::size_t n = 0; n + 1 < a_y.size(); ++n)
        b_x[n] = -(a_y[n + 1] - a_y[n]) / dz;
    return b_x;
}

/// Node indices of the field edges a and b on a mesh.
///
/// The closed-form oracles assume node-aligned ramps, so a and b must land on
/// mesh nodes (and on element-boundary nodes for order-2 meshes); misaligned
/// inputs are rejected rather than snapped. The mesh must span the field
/// domain exactly.
struct FieldNodeIndices {
    std::size_t n_a;
    std::size_t n_b;
};

inline FieldNodeIndices field_node_indices(const Mesh1D& mesh, const AppliedField& field) {
    mesh.validate();
    field.validate();
    const double tol = 1e-9;
    if (std::abs(mesh.length() - field.L) > tol * field.L)
        throw std::invalid_argument("field_node_indices: mesh length does not match field.L");
    const double ra = field.a / mesh.dz;
    const double rb = field.b / mesh.dz;
    const double na = std::round(ra);
    const double nb = std::round(rb);
    if (std::abs(ra - na) > tol || std::abs(rb - nb) > tol)
        throw std::invalid_argument(
            "field_node_indices: field edges a, b must coincide with mesh nodes");
    if (mesh.order == 2 &&
        (static_cast<long long>(na) % 2 != 0 || static_cast<long long>(nb) % 2 != 0))
        throw std::invalid_argument(
            "field_node_indices: order-2 meshes need a, b on element-boundary nodes");
    const auto ia = static_cast<std::size_t>(na);
    const auto ib = static_cast<std::size_t>(nb);
    if (ia == 0 || ib >= mesh.n_nodes - 1)
        throw std::invalid_argument("field_node_indices: field window must be interior");
    return {ia, ib};
}

/// Nodal samples of B_x on the mesh.
inline std::vector<double> sample_applied_field(const Mesh1D& mesh, const AppliedField& field) {
    const auto [n_a, n_b] = field_node_indices(mesh, field);
    std::vector<double> s(mesh.n_nodes, 0.0);
    for (std::size_t n = n_a; n <= n_b; ++n) s[n] = field.B;
    return s;
}

/// Nodal samples of A_sy on the mesh.
inline std::vector<double> sample_source_potential(const Mesh1D& mesh, const AppliedField& field) {
    const auto [n_a, n_b] = field_node_indices(mesh, field);
    std::vector<double> s(mesh.n_nodes);
    for (std::size_t n = 0; n < mesh.n_nodes; ++n) {
        if (n < n_a)
            s[n] = 0.0;
        else if (n <= n_b)
            s[n] = -field.B * (static_cast<double>(n - n_a) * mesh.dz);
        else
            s[n] = -field.B * (field.b - field.a);
    }
    return s;
}

/// Nodal samples of the continuum solution (the reference for error studies).
inline std::vector<double> sample_ode_analytic(const Mesh1D& mesh, const AppliedField& field,
                                               const PhysicalParams& params) {
    std::vector<double> s(mesh.n_nodes);
    for (std::size_t n = 0; n < mesh.n_nodes; ++n)
        s[n] = ode_analytic_solution(field, params, std::min(static_cast<double>(n) * mesh.dz,
                                                             field.L));
    return s;
}

}  // namespace emflow

#endif  // EMFLOW_CORE_HPP
