#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "emflow/analytic.hpp"
#include "emflow/ztrans.hpp"

using namespace emflow;
using namespace emflow::ztrans;

TEST_SUITE("ztrans") {

TEST_CASE("factored forms of the two transfer functions") {
    const double dz = 0.25;
    const auto bx = transfer_function(3.0, dz, InputMode::flux_density);
    CHECK(bx.gain == doctest::Approx(3.0 * dz));  // 2*3*dz/2
    REQUIRE(bx.zeros.size() == 1);
    CHECK(bx.zeros[0] == std::complex<double>(0.0, 0.0));
    REQUIRE(bx.poles.size() == 2);
    CHECK(bx.poles[0].real() == 1.0);
    CHECK(bx.poles[1].real() == doctest::Approx(-2.0));

    const auto asy = transfer_function(3.0, dz, InputMode::vector_potential);
    CHECK(asy.gain == doctest::Approx(-1.5));  // -3/2
    REQUIRE(asy.zeros.size() == 2);
    CHECK(asy.zeros[0].real() == 1.0);
    CHECK(asy.zeros[1].real() == -1.0);

    // the pole set is shared between the modes (same stencil)
    for (double pe : {0.5, 2.0, 30.0, 3000.0}) {
        const auto a = transfer_function(pe, dz, InputMode::flux_density);
        const auto b = transfer_function(pe, dz, InputMode::vector_potential);
        CHECK(a.poles[0] == b.poles[0]);
        CHECK(a.poles[1] == b.poles[1]);
    }

    // the second pole tends to -1 as Pe grows
    CHECK(transfer_function(1e6, dz, InputMode::flux_density).poles[1].real() ==
          doctest::Approx(-1.0).epsilon(1e-5));

    CHECK_THROWS_AS(transfer_function(1.0, dz, InputMode::flux_density), std::domain_error);
    CHECK_THROWS_AS(transfer_function(0.0, dz, InputMode::flux_density), std::invalid_argument);
}

TEST_CASE("stability classification and cancellation residual") {
    const double dz = 0.25;
    {
        const auto tf = transfer_function(3000.0, dz, InputMode::vector_potential);
        const auto rep = stability_report(tf, 3000.0);
        CHECK(rep.classification == StabilityClass::cancelled);
        CHECK(rep.cancellation_residual == doctest::Approx(2.0 / 2999.0).epsilon(1e-12));
    }
    {
        const auto tf = transfer_function(3000.0, dz, InputMode::flux_density);
        const auto rep = stability_report(tf, 3000.0);
        CHECK(rep.classification == StabilityClass::oscillatory);
        REQUIRE(rep.oscillatory_pole.has_value());
        CHECK(rep.oscillatory_pole->real() == doctest::Approx(-1.000667).epsilon(1e-6));
    }
    {
        const auto tf = transfer_function(0.5, dz, InputMode::vector_potential);
        const auto rep = stability_report(tf, 0.5);
        CHECK(rep.classification == StabilityClass::stable);
        CHECK(rep.oscillatory_pole->real() == doctest::Approx(3.0));  // positive root
    }
    // the 0.05 threshold flips between oscillatory and cancelled around Pe = 41
    CHECK(stability_report(transfer_function(41.0, dz, InputMode::vector_potential), 41.0)
              .classification == StabilityClass::oscillatory);
    CHECK(stability_report(transfer_function(42.0, dz, InputMode::vector_potential), 42.0)
              .classification == StabilityClass::cancelled);

    // residual 2/(Pe-1), monotonically decreasing in Pe; absolute comparison
    // because the pole-location arithmetic cancels at large Pe
    double prev = 1e300;
    for (double pe : {2.0, 5.0, 50.0, 500.0, 5000.0}) {
        const auto rep =
            stability_report(transfer_function(pe, dz, InputMode::vector_potential), pe);
        CHECK(std::abs(rep.cancellation_residual - 2.0 / (pe - 1.0)) < 1e-12);
        CHECK(rep.cancellation_residual < prev);
        prev = rep.cancellation_residual;
    }
}

TEST_CASE("amplitude formulas expressed through the pole location") {
    // |b_a|/B = |(1+r)/(2 r^2)| and |b_b|/B = |1/r| tie the z-plane pole to
    // the measured oscillation amplitudes
    for (double pe : {2.0, 3.0, 17.0, 450.0}) {
        const auto tf = transfer_function(pe, 0.25, InputMode::vector_potential);
        const double r = tf.poles[1].real();
        CHECK(analytic::oscillation_amplitude_asy(pe, 1.0) ==
              doctest::Approx((1.0 + r) / (2.0 * r * r)).epsilon(1e-13));
        CHECK(analytic::oscillation_amplitude_bx(pe, 1.0) ==
              doctest::Approx(1.0 / r).epsilon(1e-13));
    }
}

}  // TEST_SUITE
