#include "emflow/ztrans.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace emflow::ztrans {

RationalTF transfer_function(double pe, double dz, InputMode mode) {
    if (!(pe > 0.0)) throw std::invalid_argument("transfer_function: pe must be positive");
    if (pe == 1.0)
        throw std::domain_error("transfer_function: pe = 1 is a removable parameterization "
                                "singularity of the (-1+Pe) normalization");
    if (!(dz > 0.0)) throw std::invalid_argument("transfer_function: dz must be positive");
    const double r = (-1.0 - pe) / (-1.0 + pe);
    RationalTF tf;
    tf.poles = {{1.0, 0.0}, {r, 0.0}};
    if (mode == InputMode::flux_density) {
        tf.gain = 2.0 * pe * dz / (-1.0 + pe);
        tf.zeros = {{0.0, 0.0}};
    } else {
        tf.gain = -pe / (-1.0 + pe);
        tf.zeros = {{1.0, 0.0}, {-1.0, 0.0}};
    }
    return tf;
}

StabilityReport stability_report(const RationalTF& tf, double pe, double cancel_tol) {
    if (tf.poles.empty()) throw std::invalid_argument("stability_report: transfer function has no poles");
    // The unit pole integrates the input; the other one carries the
    // alternating mode when it is negative.
    std::optional<std::complex<double>> nonunit;
    for (const auto& p : tf.poles) {
        if (std::abs(p - std::complex<double>(1.0, 0.0)) > 1e-12) {
            nonunit = p;
            break;
        }
    }
    StabilityReport rep;
    rep.oscillatory_pole = nonunit;
    rep.cancellation_residual = std::numeric_limits<double>::infinity();
    if (nonunit) {
        for (const auto& z : tf.zeros)
            rep.cancellation_residual = std::min(rep.cancellation_residual, std::abs(*nonunit - z));
    }
    if (pe < 1.0)
        rep.classification = StabilityClass::stable;
    else if (nonunit && rep.cancellation_residual < cancel_tol)
        rep.classification = StabilityClass::cancelled;
    else
        rep.classification = StabilityClass::oscillatory;
    return rep;
}

const char* to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::stable: return "stable";
        case StabilityClass::oscillatory: return "oscillatory";
        case StabilityClass::cancelled: return "cancelled";
    }
    return "unknown";
}

}  // namespace emflow::ztrans
