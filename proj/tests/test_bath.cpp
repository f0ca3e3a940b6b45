#include <catch2/catch.hpp>

#include "probeqfi/bath.hpp"
#include "oracles.hpp"

using namespace probeqfi;

TEST_CASE("BathParams construction rejects invalid values") {
    CHECK_THROWS_AS(BathParams(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BathParams(-1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BathParams(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BathParams(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BathParams(1.0, 1.0, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(BathParams(1.0, 1.0, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(BathParams(std::nan(""), 1.0, 1.0), std::invalid_argument);
    CHECK_NOTHROW(BathParams(1e-6, 100.0, 0.1, 0.0));
}

TEST_CASE("Ohmicity classification and derived beta") {
    CHECK(BathParams(1, 1, 0.999999).ohmicity() == Ohmicity::SubOhmic);
    CHECK(BathParams(1, 1, 1.0).ohmicity() == Ohmicity::Ohmic);
    CHECK(BathParams(1, 1, 1.000001).ohmicity() == Ohmicity::SuperOhmic);
    CHECK(BathParams(1, 1, 1, 0.0).beta() == std::numeric_limits<double>::infinity());
    CHECK(BathParams(1, 1, 1, 0.25).beta() == Approx(4.0));
    CHECK(BathParams(1, 1, 1.0 + 1e-13).ohmic_window());
    CHECK_FALSE(BathParams(1, 1, 1.0 + 1e-11).ohmic_window());
}

TEST_CASE("spectral density matches hand-evaluated points") {
    CHECK(spectral_density(BathParams(1, 1, 1), 1.0) == Approx(std::exp(-1.0)).epsilon(1e-12));
    // Ohmic small-frequency behavior: J ~ G w
    const BathParams ohmic(2, 5, 1);
    CHECK(spectral_density(ohmic, 1e-9) / 1e-9 == Approx(2.0).epsilon(1e-6));
    CHECK(spectral_density(BathParams(1, 5, 0.5), 5.0) == Approx(5.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(spectral_density(ohmic, 0.0), std::domain_error);
    CHECK_THROWS_AS(spectral_density(ohmic, -1.0), std::domain_error);
}

TEST_CASE("spectral density partials: direct values") {
    const BathParams b1(2, 1, 1);
    CHECK(spectral_density_partial(b1, 1.0, EstimationTarget::Coupling)
          == Approx(std::exp(-1.0)).epsilon(1e-12));
    const BathParams b2(1, 1, 1);
    CHECK(spectral_density_partial(b2, 1.0, EstimationTarget::CutoffFrequency)
          == Approx(std::exp(-1.0)).epsilon(1e-12));
    // J vanishes linearly at w -> 0+, so does its cutoff partial (Ohmic case)
    CHECK(std::abs(spectral_density_partial(b2, 1e-12, EstimationTarget::CutoffFrequency)) < 1e-11);
    CHECK_THROWS_AS(spectral_density_partial(b1, 1.0, EstimationTarget::Temperature),
                    std::invalid_argument);
}

TEST_CASE("spectral density decays to nothing far past the cutoff") {
    oracles::Rng rng(101);
    for (int k = 0; k < 20; ++k) {
        const BathParams bath(rng.uniform(0.1, 3.0), rng.uniform(0.5, 10.0), rng.uniform(0.1, 3.0));
        double peak = 0.0;
        for (int i = 1; i <= 200; ++i)
            peak = std::max(peak, spectral_density(bath, 20.0 * bath.omega_c * i / 200.0));
        CHECK(spectral_density(bath, 50.0 * bath.omega_c) < 1e-15 * peak);
    }
}

TEST_CASE("scaling identity: J is exactly linear in G") {
    oracles::Rng rng(102);
    for (int k = 0; k < 50; ++k) {
        const double g = rng.uniform(0.01, 5.0);
        const double wc = rng.uniform(0.5, 10.0);
        const double s = rng.uniform(0.1, 3.0);
        const double w = rng.uniform(1e-3, 40.0);
        CHECK(spectral_density(BathParams(g, wc, s), w)
              == g * spectral_density(BathParams(1.0, wc, s), w));
    }
}

TEST_CASE("partials agree with central finite differences on a log grid") {
    oracles::Rng rng(103);
    for (int cfg = 0; cfg < 5; ++cfg) {
        const BathParams bath(rng.uniform(0.1, 3.0), rng.uniform(0.5, 10.0), rng.uniform(0.1, 3.0));
        for (int i = 0; i < 100; ++i) {
            const double w = 1e-3 * bath.omega_c
                           * std::pow(20.0 / 1e-3, i / 99.0);
            const double hg = 1e-5 * bath.G;
            const double fd_g = (spectral_density(bath.with_coupling(bath.G + hg), w)
                               - spectral_density(bath.with_coupling(bath.G - hg), w)) / (2 * hg);
            CHECK(oracles::rel_diff(fd_g, spectral_density_partial(bath, w, EstimationTarget::Coupling),
                                    1e-30) < 1e-6);
            const double hc = 1e-5 * bath.omega_c;
            const double fd_c = (spectral_density(bath.with_cutoff(bath.omega_c + hc), w)
                               - spectral_density(bath.with_cutoff(bath.omega_c - hc), w)) / (2 * hc);
            const double an_c = spectral_density_partial(bath, w, EstimationTarget::CutoffFrequency);
            CHECK(std::abs(fd_c - an_c) <= 1e-6 * std::max({std::abs(fd_c), std::abs(an_c), 1e-12}));
        }
    }
}
