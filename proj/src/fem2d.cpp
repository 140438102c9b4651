#include "emflow/fem2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emflow::fem2d {

namespace {

constexpr double kGradingRatio = 1.3;

// Geometric ladder of n interval sizes starting at the interface, scaled to
// fill `extent` exactly; finest interval first.
std::vector<double> graded_sizes(double extent, double h0, std::size_t cap) {
    std::vector<double> sizes;
    double h = h0, total = 0.0;
    while (total < extent && sizes.size() < cap) {
        sizes.push_back(h);
        total += h;
        h *= kGradingRatio;
    }
    const double scale = extent / total;
    for (double& s : sizes) s *= scale;
    return sizes;
}

int gauss2_sign(int q) { return (q == 0) ? -1 : 1; }

}  // namespace

Grid2D Grid2D::refined() const {
    Grid2D g;
    g.z.reserve(2 * z.size() - 1);
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        g.z.push_back(z[i]);
        g.z.push_back(0.5 * (z[i] + z[i + 1]));
    }
    g.z.push_back(z.back());
    g.y.reserve(2 * y.size() - 1);
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        g.y.push_back(y[i]);
        g.y.push_back(0.5 * (y[i] + y[i + 1]));
    }
    g.y.push_back(y.back());
    g.iy_fluid_lo = 2 * iy_fluid_lo;
    g.iy_fluid_hi = 2 * iy_fluid_hi;
    return g;
}

Grid2D build_grid(const ChannelGeometry& geom, const PhysicalParams& params, double target_pe,
                  std::size_t fluid_half_intervals) {
    geom.validate();
    params.validate();
    if (!(target_pe > 0.0 && target_pe < 1.0))
        throw std::invalid_argument("build_grid: target_pe must lie in (0, 1)");
    if (!(params.u_z > 0.0)) throw std::invalid_argument("build_grid: u_z must be positive");
    if (fluid_half_intervals < 2)
        throw std::invalid_argument("build_grid: need at least 2 fluid half intervals");

    const double length = geom.axial_length();
    const double dz_raw = 2.0 * target_pe / params.convection_rate();
    // Smallest axial element count that keeps Pe <= target and puts the
    // window edges on grid lines.
    std::size_t n_elem = static_cast<std::size_t>(std::ceil(length / dz_raw));
    const std::size_t n_start = n_elem;
    bool aligned = false;
    for (; n_elem <= 8 * n_start + 64; ++n_elem) {
        const double fa = geom.window_a / length * static_cast<double>(n_elem);
        const double fb = geom.window_b / length * static_cast<double>(n_elem);
        if (std::abs(fa - std::round(fa)) < 1e-9 && std::abs(fb - std::round(fb)) < 1e-9) {
            aligned = true;
            break;
        }
    }
    if (!aligned)
        throw std::invalid_argument(
            "build_grid: window edges are not commensurate with the axial grid");
    Grid2D grid;
    grid.z.resize(n_elem + 1);
    const double dz = length / static_cast<double>(n_elem);
    for (std::size_t i = 0; i <= n_elem; ++i) grid.z[i] = dz * static_cast<double>(i);

    // Transverse grid, midline at y = 0. The fluid half uses a geometric
    // ladder refined at the interface; air continues from the interface size.
    const double half = 0.5 * geom.d;
    double h0 = half * (kGradingRatio - 1.0) /
                (std::pow(kGradingRatio, static_cast<double>(fluid_half_intervals)) - 1.0);
    std::vector<double> fluid_half(fluid_half_intervals);
    {
        double h = h0;
        for (std::size_t i = 0; i < fluid_half_intervals; ++i) {
            fluid_half[i] = h;
            h *= kGradingRatio;
        }
        // exact closure of the half-width
        double total = 0.0;
        for (double s : fluid_half) total += s;
        for (double& s : fluid_half) s *= half / total;
    }
    std::vector<double> air = graded_sizes(geom.air_extent(), h0, 200);
    if (geom.plate_thickness > 0.0) {
        // carve a resolved plate layer out of the air side
        std::vector<double> plate{0.5 * geom.plate_thickness, 0.5 * geom.plate_thickness};
        std::vector<double> outer =
            graded_sizes(geom.air_extent() - geom.plate_thickness, h0, 200);
        air = plate;
        air.insert(air.end(), outer.begin(), outer.end());
    }

    std::vector<double> ycoords;
    double yc = -(half + geom.air_extent());
    ycoords.push_back(yc);
    for (auto it = air.rbegin(); it != air.rend(); ++it) ycoords.push_back(yc += *it);
    grid.iy_fluid_lo = ycoords.size() - 1;
    for (double s : fluid_half) ycoords.push_back(yc += s);
    for (auto it = fluid_half.rbegin(); it != fluid_half.rend(); ++it) ycoords.push_back(yc += *it);
    grid.iy_fluid_hi = ycoords.size() - 1;
    for (double s : air) ycoords.push_back(yc += s);
    // pin the symmetric landmarks exactly
    ycoords.front() = -(half + geom.air_extent());
    ycoords[grid.iy_fluid_lo] = -half;
    ycoords[grid.iy_fluid_lo + fluid_half_intervals] = 0.0;
    ycoords[grid.iy_fluid_hi] = half;
    ycoords.back() = half + geom.air_extent();
    grid.y = std::move(ycoords);

    const double pe = 0.5 * params.convection_rate() * dz;
    if (!(pe < 1.0)) throw std::logic_error("build_grid: produced an element with Pe >= 1");
    return grid;
}

System2D assemble_2d(const Grid2D& grid, const ChannelGeometry& geom, const PhysicalParams& params,
                     const AppliedField& field) {
    geom.validate();
    params.validate();
    field.validate();
    if (std::abs(field.L - geom.axial_length()) > 1e-9 * geom.axial_length() ||
        std::abs(field.a - geom.window_a) > 1e-9 * geom.axial_length() ||
        std::abs(field.b - geom.window_b) > 1e-9 * geom.axial_length())
        throw std::invalid_argument("assemble_2d: field window does not match the geometry");
    // elements must not straddle the window edges (the source is classified
    // by element midpoint)
    const double fa = field.a / grid.dz(), fb = field.b / grid.dz();
    if (std::abs(fa - std::round(fa)) > 1e-6 || std::abs(fb - std::round(fb)) > 1e-6)
        throw std::invalid_argument("assemble_2d: window edges must lie on axial grid lines");
    const std::size_t ny = grid.ny(), nz = grid.nz();
    const std::size_t n = ny * nz;
    System2D sys{grid, BandedMatrix(n, ny + 1), std::vector<double>(n, 0.0)};

    const double inv_mu = 1.0 / params.mu;
    const double conv_fluid = params.sigma * params.u_z;
    const double w = grid.dz();
    const double g = 1.0 / std::sqrt(3.0);

    for (std::size_t ez = 0; ez + 1 < nz; ++ez) {
        const double z0 = grid.z[ez];
        const double zmid = z0 + 0.5 * w;
        const double b_ap =
            (zmid > field.a && zmid < field.b) ? field.B : 0.0;
        for (std::size_t ey = 0; ey + 1 < ny; ++ey) {
            const double h = grid.y[ey + 1] - grid.y[ey];
            const bool fluid = (ey >= grid.iy_fluid_lo && ey < grid.iy_fluid_hi);
            const double conv = fluid ? conv_fluid : 0.0;
            if (h <= 0.0) throw SolverError("assemble_2d: degenerate element");
            const std::size_t nodes[4] = {grid.node(ez, ey), grid.node(ez + 1, ey),
                                          grid.node(ez + 1, ey + 1), grid.node(ez, ey + 1)};
            double ke[4][4] = {};
            double fe[4] = {};
            for (int qz = 0; qz < 2; ++qz) {
                for (int qy = 0; qy < 2; ++qy) {
                    const double xi = g * gauss2_sign(qz);
                    const double eta = g * gauss2_sign(qy);
                    // bilinear shapes on [-1,1]^2, nodes CCW from (z0, y0)
                    const double shape[4] = {0.25 * (1 - xi) * (1 - eta),
                                             0.25 * (1 + xi) * (1 - eta),
                                             0.25 * (1 + xi) * (1 + eta),
                                             0.25 * (1 - xi) * (1 + eta)};
                    const double dxi[4] = {-0.25 * (1 - eta), 0.25 * (1 - eta),
                                           0.25 * (1 + eta), -0.25 * (1 + eta)};
                    const double deta[4] = {-0.25 * (1 - xi), -0.25 * (1 + xi),
                                            0.25 * (1 + xi), 0.25 * (1 - xi)};
                    const double jac = 0.25 * w * h;  // weights are 1
                    for (int i = 0; i < 4; ++i) {
                        const double dzi = dxi[i] * 2.0 / w;
                        const double dyi = deta[i] * 2.0 / h;
                        for (int j = 0; j < 4; ++j) {
                            const double dzj = dxi[j] * 2.0 / w;
                            const double dyj = deta[j] * 2.0 / h;
                            ke[i][j] += jac * (inv_mu * (dzi * dzj + dyi * dyj) +
                                               conv * shape[i] * dzj);
                        }
                        fe[i] += jac * conv * b_ap * dzi;
                    }
                }
            }
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) sys.matrix.at(nodes[i], nodes[j]) += ke[i][j];
                sys.rhs[nodes[i]] += fe[i];
            }
        }
    }

    // Dirichlet b_x = 0 on the whole outer boundary.
    for (std::size_t iz = 0; iz < nz; ++iz) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            if (iz == 0 || iz + 1 == nz || iy == 0 || iy + 1 == ny) {
                const std::size_t node = grid.node(iz, iy);
                sys.matrix.clear_row(node);
                sys.matrix.at(node, node) = 1.0;
                sys.rhs[node] = 0.0;
            }
        }
    }
    return sys;
}

Solution2D solve_2d(const System2D& system) {
    Solution2D sol{system.grid, {}};
    try {
        sol.b_x = solve_banded_checked(system.matrix, system.rhs, 1e-8, 1e-12);
    } catch (const SolverError& err) {
        throw SolverError(std::string("solve_2d: ") + err.what());
    }
    return sol;
}

NetCurrentResult net_current_bisecting_plane(const Solution2D& sol, const PhysicalParams& params,
                                             double z0) {
    const auto& grid = sol.grid;
    if (!(z0 >= grid.z.front() && z0 <= grid.z.back()))
        throw std::out_of_range("net_current_bisecting_plane: z0 outside the axial span");
    std::size_t iz = 0;
    while (iz + 2 < grid.nz() && grid.z[iz + 1] <= z0) ++iz;
    const double theta = (z0 - grid.z[iz]) / (grid.z[iz + 1] - grid.z[iz]);
    const std::size_t ny = grid.ny();
    double net = 0.0, absint = 0.0;
    for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
        const double lo = (1.0 - theta) * sol.b_x[grid.node(iz, iy)] +
                          theta * sol.b_x[grid.node(iz + 1, iy)];
        const double hi = (1.0 - theta) * sol.b_x[grid.node(iz, iy + 1)] +
                          theta * sol.b_x[grid.node(iz + 1, iy + 1)];
        const double delta = hi - lo;  // J_z * dy = -(1/mu) * delta
        net -= delta / params.mu;
        absint += std::abs(delta) / params.mu;
    }
    NetCurrentResult res{net, absint, 0.0};
    res.normalized = (absint > 0.0) ? std::abs(net) / absint : 0.0;
    return res;
}

double downstream_decay_metric(const Solution2D& sol) {
    const auto& grid = sol.grid;
    const double z_tail = grid.z.front() + 0.95 * (grid.z.back() - grid.z.front());
    double tail = 0.0, global = 0.0;
    for (std::size_t iz = 0; iz < grid.nz(); ++iz) {
        for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
            const double v = std::abs(sol.b_x[grid.node(iz, iy)]);
            global = std::max(global, v);
            if (grid.z[iz] >= z_tail) tail = std::max(tail, v);
        }
    }
    return (global > 0.0) ? tail / global : 0.0;
}

double upstream_confinement_metric(const Solution2D& sol, const ChannelGeometry& geom) {
    const auto& grid = sol.grid;
    const double z_cut = geom.window_a - (geom.window_b - geom.window_a);
    double head = 0.0, global = 0.0;
    for (std::size_t iz = 0; iz < grid.nz(); ++iz) {
        for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
            const double v = std::abs(sol.b_x[grid.node(iz, iy)]);
            global = std::max(global, v);
            if (grid.z[iz] <= z_cut) head = std::max(head, v);
        }
    }
    return (global > 0.0) ? head / global : 0.0;
}

std::vector<double> centerline_profile(const Solution2D& sol) {
    const auto& grid = sol.grid;
    // midline node: y == 0 by construction
    std::size_t iy0 = grid.iy_fluid_lo;
    for (std::size_t iy = grid.iy_fluid_lo; iy <= grid.iy_fluid_hi; ++iy)
        if (std::abs(grid.y[iy]) < std::abs(grid.y[iy0])) iy0 = iy;
    std::vector<double> line(grid.nz());
    for (std::size_t iz = 0; iz < grid.nz(); ++iz) line[iz] = sol.b_x[grid.node(iz, iy0)];
    return line;
}

std::vector<double> y_integrated_bx(const Solution2D& sol) {
    const auto& grid = sol.grid;
    std::vector<double> out(grid.nz(), 0.0);
    for (std::size_t iz = 0; iz < grid.nz(); ++iz) {
        double acc = 0.0;
        for (std::size_t iy = 0; iy + 1 < grid.ny(); ++iy) {
            const double h = grid.y[iy + 1] - grid.y[iy];
            acc += 0.5 * h * (sol.b_x[grid.node(iz, iy)] + sol.b_x[grid.node(iz, iy + 1)]);
        }
        out[iz] = acc;
    }
    return out;
}

CurrentDensity current_density(const Solution2D& sol, const PhysicalParams& params) {
    const auto& grid = sol.grid;
    const std::size_t nze = grid.nz() - 1, nye = grid.ny() - 1;
    CurrentDensity cd;
    cd.j_y.resize(nze * nye);
    cd.j_z.resize(nze * nye);
    for (std::size_t ez = 0; ez < nze; ++ez) {
        const double w = grid.z[ez + 1] - grid.z[ez];
        for (std::size_t ey = 0; ey < nye; ++ey) {
            const double h = grid.y[ey + 1] - grid.y[ey];
            const double b00 = sol.b_x[grid.node(ez, ey)];
            const double b10 = sol.b_x[grid.node(ez + 1, ey)];
            const double b11 = sol.b_x[grid.node(ez + 1, ey + 1)];
            const double b01 = sol.b_x[grid.node(ez, ey + 1)];
            // element-averaged gradients of the bilinear interpolant
            const double dbdz = 0.5 * ((b10 - b00) + (b11 - b01)) / w;
            const double dbdy = 0.5 * ((b01 - b00) + (b11 - b10)) / h;
            cd.j_y[ez * nye + ey] = dbdz / params.mu;
            cd.j_z[ez * nye + ey] = -dbdy / params.mu;
        }
    }
    return cd;
}

}  // namespace emflow::fem2d
