#ifndef EMFLOW_BANDED_HPP
#define EMFLOW_BANDED_HPP

/// @file banded.hpp
/// @brief Dense-band matrix storage and direct elimination. For bandwidth 1
///        this reduces to the Thomas algorithm; the 2D solver reuses the same
///        code with bandwidth equal to the transverse node count + 1.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace emflow {

/// Error raised when elimination hits a vanishing pivot or the computed
/// solution fails its residual contract.
class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Square banded matrix, row-major band storage.
///
/// Entry (i, j) is stored iff |i - j| <= bandwidth. No pivoting is performed
/// by solve(); the systems assembled here keep their pivots well away from
/// zero for Pe >= 0, and solve() verifies the residual afterwards.
class BandedMatrix {
  public:
    BandedMatrix() = default;
    BandedMatrix(std::size_t n, std::size_t bandwidth)
        : n_(n), bw_(bandwidth), data_(n * (2 * bandwidth + 1), 0.0) {}

    std::size_t size() const { return n_; }
    std::size_t bandwidth() const { return bw_; }

    bool in_band(std::size_t i, std::size_t j) const {
        return (i < n_) && (j < n_) && (i <= j + bw_) && (j <= i + bw_);
    }

    double& at(std::size_t i, std::size_t j) {
        if (!in_band(i, j)) throw std::out_of_range("BandedMatrix::at outside band");
        return data_[i * (2 * bw_ + 1) + (j + bw_ - i)];
    }
    double get(std::size_t i, std::size_t j) const {
        if (!in_band(i, j)) return 0.0;
        return data_[i * (2 * bw_ + 1) + (j + bw_ - i)];
    }

    void clear_row(std::size_t i) {
        for (std::size_t k = 0; k < 2 * bw_ + 1; ++k) data_[i * (2 * bw_ + 1) + k] = 0.0;
    }

    std::vector<double> multiply(std::span<const double> x) const;

    /// Direct in-place band LU solve (no pivoting). Throws SolverError on a
    /// near-zero pivot. The matrix is consumed; copy first if it is needed
    /// for a residual check.
    std::vector<double> solve_destructive(std::vector<double> rhs);

  private:
    std::size_t n_ = 0;
    std::size_t bw_ = 0;
    std::vector<double> data_;
};

/// max_i |A x - b| over max(1, max_i |b|).
double banded_residual(const BandedMatrix& a, std::span<const double> x,
                       std::span<const double> b);

/// Solve A x = b keeping A intact, then verify the residual contract:
/// ||Ax-b||_inf / ||b||_inf < rel_tol, or ||Ax-b||_inf < abs_tol when b = 0.
std::vector<double> solve_banded_checked(const BandedMatrix& a, std::span<const double> b,
                                         double rel_tol = 1e-10, double abs_tol = 1e-12);

}  // namespace emflow

#endif  // EMFLOW_BANDED_HPP
