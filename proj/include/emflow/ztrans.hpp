#ifndef EMFLOW_ZTRANS_HPP
#define EMFLOW_ZTRANS_HPP

/// @file ztrans.hpp
/// @brief Z-domain view of the 1D stencil: discrete transfer functions for
///        both input modes, pole/zero reporting and pole-zero-cancellation
///        classification.

#include <complex>
#include <optional>
#include <vector>

#include "emflow/core.hpp"

namespace emflow::ztrans {

/// Rational transfer function in Z, held in factored form. Poles and zeros
/// are constructed from the closed-form factorizations, not recovered from
/// polynomial coefficients, so they are exact.
struct RationalTF {
    double gain;  ///< carries a dz factor for the flux-density form
    std::vector<std::complex<double>> zeros;
    std::vector<std::complex<double>> poles;
};

enum class StabilityClass { stable, oscillatory, cancelled };

struct StabilityReport {
    std::optional<std::complex<double>> oscillatory_pole;  ///< the non-unit pole
    double cancellation_residual;  ///< min distance from that pole to any zero
    StabilityClass classification;
};

/// Transfer function of the three-term stencil for the given input mode.
///
/// Flux density:     gain 2*Pe*dz/(-1+Pe), zero {0},   poles {1, r}
/// Vector potential: gain -Pe/(-1+Pe),     zeros {+1,-1}, poles {1, r}
/// with r = (-1-Pe)/(-1+Pe). Pe = 1 is rejected (the normalization by
/// (-1+Pe) is singular there).
RationalTF transfer_function(double pe, double dz, InputMode mode);

/// Classify the non-unit pole r: stable for Pe < 1 (r positive, no
/// alternating mode), otherwise cancelled when a zero lies within cancel_tol
/// of r and oscillatory when none does. For the vector-potential form the
/// residual is |r - (-1)| = 2/(Pe-1).
///
/// The default threshold 0.05 corresponds to Pe > 41, matching the
/// empirically verified stability onset around Pe = 30; it is a reporting
/// choice, not a property of the scheme.
StabilityReport stability_report(const RationalTF& tf, double pe, double cancel_tol = 0.05);

const char* to_string(StabilityClass c);

}  // namespace emflow::ztrans

#endif  // EMFLOW_ZTRANS_HPP
