#include "emflow/banded.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace emflow {

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
    if (x.size() != n_) throw std::invalid_argument("BandedMatrix::multiply: size mismatch");
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j0 = (i > bw_) ? i - bw_ : 0;
        const std::size_t j1 = std::min(n_ - 1, i + bw_);
        double acc = 0.0;
        for (std::size_t j = j0; j <= j1; ++j) acc += data_[i * (2 * bw_ + 1) + (j + bw_ - i)] * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<double> BandedMatrix::solve_destructive(std::vector<double> rhs) {
    if (rhs.size() != n_) throw std::invalid_argument("BandedMatrix::solve: rhs size mismatch");
    const std::size_t w = 2 * bw_ + 1;
    // Forward elimination over the sub-band.
    for (std::size_t k = 0; k < n_; ++k) {
        const double pivot = data_[k * w + bw_];
        if (std::abs(pivot) < 1e-300)
            throw SolverError("banded solve: vanishing pivot at row " + std::to_string(k));
        const std::size_t last = std::min(n_ - 1, k + bw_);
        for (std::size_t i = k + 1; i <= last; ++i) {
            const double entry = data_[i * w + (k + bw_ - i)];
            if (entry == 0.0) continue;
            const double factor = entry / pivot;
            data_[i * w + (k + bw_ - i)] = 0.0;
            for (std::size_t j = k + 1; j <= std::min(n_ - 1, k + bw_); ++j)
                data_[i * w + (j + bw_ - i)] -= factor * data_[k * w + (j + bw_ - k)];
            rhs[i] -= factor * rhs[k];
        }
    }
    // Back substitution.
    std::vector<double> x(n_);
    for (std::size_t ii = n_; ii-- > 0;) {
        double acc = rhs[ii];
        const std::size_t j1 = std::min(n_ - 1, ii + bw_);
        for (std::size_t j = ii + 1; j <= j1; ++j) acc -= data_[ii * w + (j + bw_ - ii)] * x[j];
        x[ii] = acc / data_[ii * w + bw_];
    }
    return x;
}

double banded_residual(const BandedMatrix& a, std::span<const double> x,
                       std::span<const double> b) {
    const auto ax = a.multiply(x);
    double r = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i) r = std::max(r, std::abs(ax[i] - b[i]));
    return r;
}

std::vector<double> solve_banded_checked(const BandedMatrix& a, std::span<const double> b,
                                         double rel_tol, double abs_tol) {
    BandedMatrix work = a;
    auto x = work.solve_destructive(std::vector<double>(b.begin(), b.end()));
    const double res = banded_residual(a, x, b);
    double bnorm = 0.0;
    for (double v : b) bnorm = std::max(bnorm, std::abs(v));
    const bool ok = (bnorm > 0.0) ? (res / bnorm < rel_tol) : (res < abs_tol);
    if (!ok)
        throw SolverError("banded solve: residual " + std::to_string(res) +
                          " exceeds tolerance (|b|_inf = " + std::to_string(bnorm) + ")");
    return x;
}

}  // namespace emflow
