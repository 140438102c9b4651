#ifndef EMFLOW_ANALYTIC_HPP
#define EMFLOW_ANALYTIC_HPP

/// @file analytic.hpp
/// @brief Exact closed-form solutions of the 1D governing difference
///        equations for both input modes, the oscillation-amplitude formulas
///        and the peak-error sweep. These are the oracles the FEM solutions
///        are verified against, node for node.

#include <cstddef>
#include <span>
#include <vector>

#include "emflow/core.hpp"

namespace emflow::analytic {

using emflow::InputMode;

/// The five axial sub-domains of the piecewise solution: zero field,
/// rising ramp, constant field, falling ramp, zero field.
enum class Subdomain { B, F, C, G, D };

/// Closed-form solution of the difference equation, assembled from one
/// homogeneous root r and per-domain complementary/particular parts.
///
/// Domains are concatenated with shared junction nodes (the last node of one
/// domain is the first node of the next), so the global node count is
/// m_b + m_c + m_d + 2*ramp_width + 1.
struct PiecewiseDifferenceSolution {
    double r;       ///< root (-1-Pe)/(-1+Pe) of the homogeneous equation
    double lambda;  ///< load scale B*dz [Wb/m]
    int m_b;        ///< upstream zero-field interval count
    int m_c;        ///< constant-load interval count
    int m_d;        ///< downstream zero-field interval count
    int ramp_width; ///< 1 for flux-density input, 2 for vector-potential input
    double b1, b2, f1, f2, c1, c2, g1, g2, d1, d2;

    std::size_t total_nodes() const {
        return static_cast<std::size_t>(m_b + m_c + m_d + 2 * ramp_width + 1);
    }
};

/// Closed form for flux-density input. Requires pe > 0, pe != 1 and
/// m_b, m_c, m_d >= 1.
PiecewiseDifferenceSolution difference_solution_bx(double pe, double lambda, int m_b, int m_c,
                                                   int m_d);

/// Closed form for vector-potential input (two-element ramps).
PiecewiseDifferenceSolution difference_solution_asy(double pe, double lambda, int m_b, int m_c,
                                                    int m_d);

/// Evaluate one sub-domain's general solution at a local node index.
double evaluate_in_domain(const PiecewiseDifferenceSolution& sol, Subdomain dom, int local_node);

/// Evaluate at a global node index; junction nodes give identical values from
/// either adjacent domain.
double evaluate_piecewise(const PiecewiseDifferenceSolution& sol, std::size_t global_node);

/// All nodes of the closed-form solution, in global order.
std::vector<double> sample_piecewise(const PiecewiseDifferenceSolution& sol);

/// Right-hand side of the r-normalized difference equation
/// r*y(n-1) + (-1-r)*y(n) + y(n+1) = rhs at a local node of a sub-domain.
double domain_rhs(const PiecewiseDifferenceSolution& sol, Subdomain dom, int local_node);

/// Same right-hand side by global node index.
double global_rhs(const PiecewiseDifferenceSolution& sol, std::size_t global_node);

/// Oscillatory part of the reaction field at the end of the constant-field
/// domain, vector-potential input: B*(1-Pe)/(1+Pe)^2 (signed).
double oscillation_amplitude_asy(double pe, double b);

/// Same for flux-density input: B*(1-Pe)/(1+Pe) (signed).
double oscillation_amplitude_bx(double pe, double b);

struct PeakErrorRow {
    double pe;
    double pct_asy;  ///< 100*|amplitude_asy|/B
    double pct_bx;   ///< 100*|amplitude_bx|/B
};

/// Peak-error magnitudes relative to B over a Peclet grid.
std::vector<PeakErrorRow> peak_error_curve(std::span<const double> pe_grid, double b);

/// Sub-domain interval counts for a node-aligned field window on a mesh.
/// The vector-potential ramps span two elements, so its constant-load domain
/// is two intervals shorter than the flux-density one.
struct SubdomainCounts {
    int m_b;
    int m_c;
    int m_d;
};

SubdomainCounts subdomain_counts(const Mesh1D& mesh, const AppliedField& field, InputMode mode);

/// Closed form matching a (mesh, field, params) configuration; node i of the
/// returned solution corresponds to mesh node i.
PiecewiseDifferenceSolution closed_form_solution(const Mesh1D& mesh, const AppliedField& field,
                                                 const PhysicalParams& params, InputMode mode);

}  // namespace emflow::analytic

#endif  // EMFLOW_ANALYTIC_HPP
