#ifndef EMFLOW_FEM1D_HPP
#define EMFLOW_FEM1D_HPP

/// @file fem1d.hpp
/// @brief Assembly and direct solution of the 1D discrete system for both
///        input modes and both element orders, plus oscillation metrics.
///
/// Linear elements reproduce the classical stencil exactly: interior row n is
/// (-1-Pe, 2, -1+Pe) with right-hand side 2*Pe*dz*B_x(n) in flux-density mode
/// and Pe*(A_sy(n-1) - A_sy(n+1)) in vector-potential mode. Inputs are
/// sampled at nodes, with no element-interior quadrature of the source, so
/// the assembled equations match the closed-form oracle node for node.

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "emflow/banded.hpp"
#include "emflow/core.hpp"

namespace emflow::fem1d {

using emflow::InputMode;

/// Assembled banded system; boundary rows are placeholders until
/// apply_boundary_conditions has run.
struct BandedSystem {
    Mesh1D mesh;
    BandedMatrix matrix;  ///< bandwidth 1 (order 1) or 2 (order 2), dz-normalized rows
    std::vector<double> rhs;
    bool bcs_applied = false;
};

/// Linear-element assembly from nodal input samples (B_x or A_sy per mode).
BandedSystem assemble_linear(const Mesh1D& mesh, double pe, std::span<const double> input_samples,
                             InputMode mode);

/// Linear-element assembly, sampling the input from the applied field.
BandedSystem assemble_linear(const Mesh1D& mesh, const PhysicalParams& params,
                             const AppliedField& field, InputMode mode);

/// Quadratic-element assembly from nodal A_sy samples: the discrete
/// convection operator applied to the sampled source builds the right-hand
/// side, which preserves the pole-zero cancellation of the linear scheme.
BandedSystem assemble_quadratic(const Mesh1D& mesh, double pe,
                                std::span<const double> asy_samples);

/// Quadratic-element assembly. Flux-density mode integrates the source
/// against the quadratic test functions with 3-point Gauss quadrature;
/// vector-potential mode delegates to the sampled overload.
BandedSystem assemble_quadratic(const Mesh1D& mesh, const PhysicalParams& params,
                                const AppliedField& field, InputMode mode);

/// Pin the first unknown to zero and replace the last row by the discrete
/// zero-gradient condition A_y(N-1) = A_y(N).
BandedSystem apply_boundary_conditions(BandedSystem system);

/// Direct banded elimination; verifies the residual contract
/// ||Ax-b||_inf/||b||_inf < 1e-10 (absolute 1e-12 for b = 0).
Solution1D solve_banded(const BandedSystem& system);

/// Convenience: assemble, constrain and solve in one call.
Solution1D solve(const Mesh1D& mesh, const PhysicalParams& params, const AppliedField& field,
                 InputMode mode);

// Element kernels (dz-normalized), exposed for verification.
std::array<std::array<double, 2>, 2> linear_element_operator(double pe);
std::array<std::array<double, 3>, 3> quadratic_element_operator(double pe);
std::array<std::array<double, 3>, 3> quadratic_element_convection();
std::array<double, 3> quadratic_element_load_constant(double f, double dz);

struct OscillationMetrics {
    double peak_abs_error;        ///< max |b_x - b_x_ref| over all edges
    std::size_t peak_error_edge;  ///< edge index of that maximum
    double oscillation_amplitude; ///< max |error| over the in-magnet edge window
    int sign_change_count;        ///< error sign alternations downstream of that window
};

/// Edge windows for the oscillation measurement. The amplitude window covers
/// the edges of the constant-load sub-domain, ending at the end-of-domain-C
/// edge where the oscillatory part of the reaction field peaks; the window is
/// two edges shorter on each side in vector-potential mode because its ramps
/// span two elements.
struct OscillationProbe {
    std::size_t first_magnet_edge;
    std::size_t last_magnet_edge;
};

OscillationProbe make_oscillation_probe(const Mesh1D& mesh, const AppliedField& field,
                                        InputMode mode);

/// Idealized sharp-profile reaction field: -B on edges whose midpoints lie in
/// the magnet window, 0 elsewhere. Measuring against this reference isolates
/// the oscillatory part of b_x from its constant part, as in the analytic
/// peak-error derivation.
std::vector<double> plateau_reference_bx(const Mesh1D& mesh, const AppliedField& field);

/// Forward-differenced continuum solution, the reference for error studies.
std::vector<double> continuum_reference_bx(const Mesh1D& mesh, const AppliedField& field,
                                           const PhysicalParams& params);

/// Error metrics of a solution against a per-edge reference.
OscillationMetrics oscillation_metrics(const Solution1D& sol, std::span<const double> reference_bx,
                                       const OscillationProbe& probe);

/// Median ratio of consecutive per-edge errors over the trailing edges of the
/// magnet window; converges to the non-unit root r for an alternating error
/// mode. Returns nullopt when the errors are too small to measure.
std::optional<double> error_alternation_ratio(const Solution1D& sol,
                                              std::span<const double> reference_bx,
                                              const OscillationProbe& probe);

}  // namespace emflow::fem1d

#endif  // EMFLOW_FEM1D_HPP
