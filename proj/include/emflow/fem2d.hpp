#ifndef EMFLOW_FEM2D_HPP
#define EMFLOW_FEM2D_HPP

/// @file fem2d.hpp
/// @brief 2D parallel-plate validation solver used to justify the 1D
///        boundary conditions.
///
/// The unknown is the single reaction-field component b_x(y, z), governed by
/// the scalar induction equation
///     (1/mu) lap(b_x) - sigma(y) u_z(y) d(b_x)/dz = sigma(y) u_z(y) dB_ap/dz
/// with sigma*u_z nonzero only in the fluid layer, pure Laplace in the
/// surrounding air, and b_x = 0 on the outer boundary. All induced currents
/// close in the y-z plane, so this single component carries the full
/// reaction field. The source derivative is applied weakly (integrated by
/// parts onto the test functions), which is the 2D counterpart of restating
/// the input through its vector potential.

#include <cstddef>
#include <vector>

#include "emflow/banded.hpp"
#include "emflow/core.hpp"

namespace emflow::fem2d {

/// Channel of fluid of thickness d between plates parallel to the xz plane,
/// with air up to 5d beyond on both sides and an axial span of 10d.
///
/// A stationary conducting plate layer can be carved into the transverse
/// grid, but it does not alter the steady scalar-induction operator (no
/// motional term without velocity), so by default it is absent.
struct ChannelGeometry {
    double d;         ///< plate separation / fluid thickness [m]
    double window_a;  ///< magnet window start along z [m]
    double window_b;  ///< magnet window end along z [m]
    double plate_thickness = 0.0;  ///< optional plate layer thickness [m]

    double air_extent() const { return 5.0 * d; }
    double axial_length() const { return 10.0 * d; }

    void validate() const {
        if (!(d > 0.0)) throw std::invalid_argument("ChannelGeometry: d must be positive");
        if (!(0.0 < window_a && window_a < window_b && window_b < axial_length()))
            throw std::invalid_argument("ChannelGeometry: window must satisfy 0 < a < b < 10d");
        if (plate_thickness < 0.0 || plate_thickness >= air_extent())
            throw std::invalid_argument("ChannelGeometry: bad plate thickness");
    }
};

/// Structured grid of bilinear quadrilaterals: uniform axial spacing,
/// transverse spacing graded geometrically (ratio <= 1.3) away from the
/// fluid-air interfaces. y = 0 is the channel midline.
struct Grid2D {
    std::vector<double> z;  ///< axial node coordinates, uniform spacing
    std::vector<double> y;  ///< transverse node coordinates
    std::size_t iy_fluid_lo;  ///< y index of the lower fluid interface
    std::size_t iy_fluid_hi;  ///< y index of the upper fluid interface

    double dz() const { return z[1] - z[0]; }
    std::size_t ny() const { return y.size(); }
    std::size_t nz() const { return z.size(); }
    std::size_t n_nodes() const { return ny() * nz(); }
    std::size_t node(std::size_t iz, std::size_t iy) const { return iz * ny() + iy; }

    /// Split every interval in both directions.
    Grid2D refined() const;
};

/// Build a grid whose per-element axial Peclet number equals target_pe after
/// snapping the axial spacing so that the window edges fall on grid lines.
/// Requires 0 < target_pe < 1.
Grid2D build_grid(const ChannelGeometry& geom, const PhysicalParams& params, double target_pe,
                  std::size_t fluid_half_intervals = 6);

struct System2D {
    Grid2D grid;
    BandedMatrix matrix;
    std::vector<double> rhs;
};

/// Galerkin bilinear-quad discretization with Dirichlet b_x = 0 on the whole
/// outer boundary. The field window must match the geometry's and lie on
/// grid lines.
System2D assemble_2d(const Grid2D& grid, const ChannelGeometry& geom, const PhysicalParams& params,
                     const AppliedField& field);

struct Solution2D {
    Grid2D grid;
    std::vector<double> b_x;  ///< nodal values, y-fastest ordering
};

/// Direct banded factorization; verifies relative residual < 1e-8.
Solution2D solve_2d(const System2D& system);

struct NetCurrentResult {
    double net;           ///< integral of J_z over the transverse extent [A/m]
    double abs_integral;  ///< integral of |J_z| for normalization [A/m]
    double normalized;    ///< |net| / abs_integral
};

/// Net current per unit depth crossing the plane z = z0, with
/// J_z = -(1/mu) d(b_x)/dy. Telescopes to zero in exact arithmetic because
/// of the outer Dirichlet condition.
NetCurrentResult net_current_bisecting_plane(const Solution2D& sol, const PhysicalParams& params,
                                             double z0);

/// max |b_x| over the last 5% of the axial span divided by the global max.
double downstream_decay_metric(const Solution2D& sol);

/// max |b_x| upstream of the window by more than one window length, divided
/// by the global max.
double upstream_confinement_metric(const Solution2D& sol, const ChannelGeometry& geom);

/// Midline profile b_x(y = 0, z).
std::vector<double> centerline_profile(const Solution2D& sol);

/// Transverse integral of b_x per z station (the vector-potential-like
/// aggregate quantity emitted alongside field snapshots).
std::vector<double> y_integrated_bx(const Solution2D& sol);

/// Element-averaged current density components (J_y, J_z), y-fastest element
/// ordering, derived from the solved field via Ampere's law.
struct CurrentDensity {
    std::vector<double> j_y;
    std::vector<double> j_z;
};
CurrentDensity current_density(const Solution2D& sol, const PhysicalParams& params);

}  // namespace emflow::fem2d

#endif  // EMFLOW_FEM2D_HPP
