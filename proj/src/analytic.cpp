#include "emflow/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace emflow::analytic {

namespace {

double homogeneous_root(double pe) {
    if (!(pe > 0.0)) throw std::invalid_argument("difference solution: pe must be positive");
    if (pe == 1.0)
        throw std::domain_error("difference solution: pe = 1 makes the root r undefined");
    return (-1.0 - pe) / (-1.0 + pe);
}

void check_counts(int m_b, int m_c, int m_d) {
    if (m_b < 1 || m_c < 1 || m_d < 1)
        throw std::invalid_argument("difference solution: m_b, m_c, m_d must be >= 1");
}

// r^n by direct exponentiation; node counts are bounded in practice, but for
// small Pe > 1 the root is large and r^m can leave double range.
double rpow(double r, int n) {
    const double guard = static_cast<double>(n) * std::log(std::abs(r));
    if (guard > 700.0)
        throw std::overflow_error("difference solution: r^n overflows for this (Pe, m) pair");
    return std::pow(r, n);
}

}  // namespace

PiecewiseDifferenceSolution difference_solution_bx(double pe, double lambda, int m_b, int m_c,
                                                   int m_d) {
    check_counts(m_b, m_c, m_d);
    const double r = homogeneous_root(pe);
    PiecewiseDifferenceSolution s{};
    s.r = r;
    s.lambda = lambda;
    s.m_b = m_b;
    s.m_c = m_c;
    s.m_d = m_d;
    s.ramp_width = 1;
    const double omr = 1.0 - r;
    s.g2 = lambda / (omr * omr);
    s.c2 = lambda / (rpow(r, m_c) * omr);
    s.f2 = -lambda / (omr * omr) + s.c2 / r;
    s.b2 = lambda / (rpow(r, m_b - 1) * omr * omr) + s.f2 / rpow(r, m_b);
    s.b1 = -s.b2;
    s.f1 = s.b1 + s.b2 * rpow(r, m_b) - s.f2;
    s.c1 = s.f1 + s.f2 * r + lambda * r / (r - 1.0) - s.c2;
    s.g1 = s.c1 + s.c2 * rpow(r, m_c) + lambda * m_c - s.g2;
    s.d1 = s.g1 + s.g2 * r + lambda / omr;
    s.d2 = 0.0;
    return s;
}

PiecewiseDifferenceSolution difference_solution_asy(double pe, double lambda, int m_b, int m_c,
                                                    int m_d) {
    check_counts(m_b, m_c, m_d);
    const double r = homogeneous_root(pe);
    PiecewiseDifferenceSolution s{};
    s.r = r;
    s.lambda = lambda;
    s.m_b = m_b;
    s.m_c = m_c;
    s.m_d = m_d;
    s.ramp_width = 2;
    const double omr = 1.0 - r;
    s.g2 = lambda / (2.0 * r * omr * omr);
    s.c2 = lambda * (1.0 + r) / (2.0 * rpow(r, m_c + 1) * omr);
    s.f2 = -lambda / (2.0 * r * omr * omr) + s.c2 / (r * r);
    s.b2 = lambda * r / (2.0 * rpow(r, m_b) * omr * omr) + s.f2 / rpow(r, m_b);
    s.b1 = -s.b2;
    s.f1 = s.b1 + s.b2 * rpow(r, m_b) - s.f2;
    s.c1 = s.f1 + s.f2 * r + lambda * (3.0 * r - 2.0) / (2.0 * (r - 1.0)) - s.c2 / r;
    s.g1 = s.c1 + s.c2 * rpow(r, m_c) + lambda * m_c - lambda / (2.0 * r * omr * omr);
    s.d1 = s.g1 + s.g2 * r + lambda * (r - 2.0) / (2.0 * (r - 1.0));
    s.d2 = 0.0;
    return s;
}

namespace {

int domain_extent(const PiecewiseDifferenceSolution& s, Subdomain dom) {
    switch (dom) {
        case Subdomain::B: return s.m_b;
        case Subdomain::F: return s.ramp_width;
        case Subdomain::C: return s.m_c;
        case Subdomain::G: return s.ramp_width;
        case Subdomain::D: return s.m_d;
    }
    throw std::logic_error("domain_extent: bad subdomain");
}

}  // namespace

double evaluate_in_domain(const PiecewiseDifferenceSolution& s, Subdomain dom, int n) {
    if (n < 0 || n > domain_extent(s, dom))
        throw std::out_of_range("evaluate_in_domain: local node outside domain range");
    const double r = s.r, lam = s.lambda;
    const double rn = rpow(r, n);
    const double dn = static_cast<double>(n);
    switch (dom) {
        case Subdomain::B:
            return s.b1 + s.b2 * rn;
        case Subdomain::F:
            if (s.ramp_width == 1)
                return s.f1 + s.f2 * rn + 0.5 * lam * ((r + 1.0) / (r - 1.0)) * dn +
                       0.5 * lam * dn * dn;
            return s.f1 + s.f2 * rn + 0.25 * lam * ((r + 1.0) / (r - 1.0)) * dn +
                   0.25 * lam * dn * dn;
        case Subdomain::C:
            return s.c1 + s.c2 * rn + lam * dn;
        case Subdomain::G:
            if (s.ramp_width == 1)
                return s.g1 + s.g2 * rn + (1.0 - (r + 1.0) / (2.0 * (r - 1.0))) * lam * dn -
                       0.5 * lam * dn * dn;
            return s.g1 + s.g2 * rn + (1.0 - (r + 1.0) / (4.0 * (r - 1.0))) * lam * dn -
                   0.25 * lam * dn * dn;
        case Subdomain::D:
            return s.d1 + s.d2 * rn;
    }
    throw std::logic_error("evaluate_in_domain: bad subdomain");
}

double evaluate_piecewise(const PiecewiseDifferenceSolution& s, std::size_t global_node) {
    if (global_node >= s.total_nodes())
        throw std::out_of_range("evaluate_piecewise: node outside solution span");
    const int g = static_cast<int>(global_node);
    int start = 0;
    for (Subdomain dom : {Subdomain::B, Subdomain::F, Subdomain::C, Subdomain::G, Subdomain::D}) {
        const int extent = domain_extent(s, dom);
        if (g <= start + extent) return evaluate_in_domain(s, dom, g - start);
        start += extent;
    }
    throw std::logic_error("evaluate_piecewise: unreachable");
}

std::vector<double> sample_piecewise(const PiecewiseDifferenceSolution& s) {
    std::vector<double> y(s.total_nodes());
    for (std::size_t n = 0; n < y.size(); ++n) y[n] = evaluate_piecewise(s, n);
    return y;
}

double domain_rhs(const PiecewiseDifferenceSolution& s, Subdomain dom, int n) {
    if (n < 0 || n > domain_extent(s, dom))
        throw std::out_of_range("domain_rhs: local node outside domain range");
    const double r = s.r, lam = s.lambda;
    const double dn = static_cast<double>(n);
    switch (dom) {
        case Subdomain::B:
        case Subdomain::D:
            return 0.0;
        case Subdomain::F:
            return (s.ramp_width == 1) ? lam * (1.0 - r) * dn : lam * 0.5 * (1.0 - r) * dn;
        case Subdomain::C:
            return lam * (1.0 - r);
        case Subdomain::G:
            return (s.ramp_width == 1) ? lam * (1.0 - r) * (1.0 - dn)
                                       : lam * 0.5 * (1.0 - r) * (2.0 - dn);
    }
    throw std::logic_error("domain_rhs: bad subdomain");
}

double global_rhs(const PiecewiseDifferenceSolution& s, std::size_t global_node) {
    if (global_node >= s.total_nodes())
        throw std::out_of_range("global_rhs: node outside solution span");
    const int g = static_cast<int>(global_node);
    int start = 0;
    for (Subdomain dom : {Subdomain::B, Subdomain::F, Subdomain::C, Subdomain::G, Subdomain::D}) {
        const int extent = domain_extent(s, dom);
        if (g <= start + extent) return domain_rhs(s, dom, g - start);
        start += extent;
    }
    throw std::logic_error("global_rhs: unreachable");
}

double oscillation_amplitude_asy(double pe, double b) {
    if (!(pe > 0.0)) throw std::invalid_argument("oscillation_amplitude_asy: pe must be positive");
    return b * (1.0 - pe) / ((1.0 + pe) * (1.0 + pe));
}

double oscillation_amplitude_bx(double pe, double b) {
    if (!(pe > 0.0)) throw std::invalid_argument("oscillation_amplitude_bx: pe must be positive");
    return b * (1.0 - pe) / (1.0 + pe);
}

std::vector<PeakErrorRow> peak_error_curve(std::span<const double> pe_grid, double b) {
    std::vector<PeakErrorRow> rows;
    rows.reserve(pe_grid.size());
    const double scale = (b != 0.0) ? std::abs(b) : 1.0;
    for (double pe : pe_grid) {
        rows.push_back({pe, 100.0 * std::abs(oscillation_amplitude_asy(pe, b)) / scale,
                        100.0 * std::abs(oscillation_amplitude_bx(pe, b)) / scale});
    }
    return rows;
}

SubdomainCounts subdomain_counts(const Mesh1D& mesh, const AppliedField& field, InputMode mode) {
    const auto [n_a, n_b] = field_node_indices(mesh, field);
    const int na = static_cast<int>(n_a);
    const int nb = static_cast<int>(n_b);
    const int last = static_cast<int>(mesh.n_nodes) - 1;
    SubdomainCounts c{};
    c.m_b = na - 1;
    c.m_d = last - nb - 1;
    c.m_c = (mode == InputMode::flux_density) ? nb - na : nb - na - 2;
    if (c.m_b < 1 || c.m_c < 1 || c.m_d < 1)
        throw std::invalid_argument(
            "subdomain_counts: field window too close to the boundaries or too narrow "
            "for this input mode");
    return c;
}

PiecewiseDifferenceSolution closed_form_solution(const Mesh1D& mesh, const AppliedField& field,
                                                 const PhysicalParams& params, InputMode mode) {
    const auto counts = subdomain_counts(mesh, field, mode);
    const double pe = peclet(params, mesh.dz);
    const double lambda = field.B * mesh.dz;
    return (mode == InputMode::flux_density)
               ? difference_solution_bx(pe, lambda, counts.m_b, counts.m_c, counts.m_d)
               : difference_solution_asy(pe, lambda, counts.m_b, counts.m_c, counts.m_d);
}

}  // namespace emflow::analytic
