#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "probeqfi/coherence.hpp"
#include "oracles.hpp"

using namespace probeqfi;

namespace {
const QuadratureSpec kTight{1e-12, 1e-15, 20'000, 0.0, 1.0, 0.0};
}

TEST_CASE("probe and pulse validation") {
    ProbeParams bad;
    bad.theta_0 = 4.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.gamma_0 = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    PulseSchedule p{-1};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    const auto times = PulseSchedule{3}.pulse_times(2.0);
    REQUIRE(times.size() == 3);
    CHECK(times[0] == Approx(0.5));
    CHECK(times[2] == Approx(1.5));
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
}

TEST_CASE("pulse kernels at hand-evaluated points") {
    const double pi = std::numbers::pi;
    // n = 0 reduces to (1 - cos)/w^2
    CHECK(pulse_kernel_F(0, 1.0, pi) == Approx(2.0).epsilon(1e-12));
    CHECK(pulse_kernel_F(1, 1.0, pi) == Approx(2.0).epsilon(1e-12));
    CHECK(pulse_kernel_F(5, 0.7, 0.0) == 0.0);
    CHECK(pulse_kernel_M(0, 1.0, 0.5 * pi) == Approx(-1.0).epsilon(1e-12));
    CHECK(pulse_kernel_M(1, 1.0, pi) == Approx(-2.0).epsilon(1e-12));
    CHECK(pulse_kernel_M(7, 0.9, 0.0) == 0.0);
    CHECK_THROWS_AS(pulse_kernel_F(0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(pulse_kernel_M(0, -1.0, 1.0), std::domain_error);
}

TEST_CASE("filter kernel identity: 2 w^2 F_n = M_n^2 + N_n^2") {
    oracles::Rng rng(21);
    for (int k = 0; k < 400; ++k) {
        const int n = rng.uniform_int(0, 20);
        const double omega = rng.uniform(0.01, 8.0);
        const double t = rng.uniform(0.0, 25.0);
        const double f = pulse_kernel_F(n, omega, t);
        const double m = pulse_kernel_M(n, omega, t);
        const double nn = oracles::pulse_kernel_N(n, omega, t);
        const double rhs = 0.5 * (m * m + nn * nn) / (omega * omega);
        CHECK(std::abs(f - rhs) <= 2e-6 * std::max(1.0, std::abs(rhs)));
        CHECK(f >= 0.0);
        CHECK(std::abs(m) <= 2.0 * n + 1.0 + 1e-12);
    }
}

TEST_CASE("filter kernel is finite and matches its companion form across a tan pole") {
    // For n = 1 the kernel's tan factor diverges at w t = 2 pi (m = 0 pole)
    const int n = 1;
    const double t = 1.0;
    const double pole = 2.0 * std::numbers::pi;
    for (double off : {-1e-6, -1e-9, -1e-12, 0.0, 1e-12, 1e-9, 1e-6}) {
        const double omega = pole + off;
        const double f = pulse_kernel_F(n, omega, t);
        const double m = pulse_kernel_M(n, omega, t);
        const double nn = oracles::pulse_kernel_N(n, omega, t);
        const double rhs = 0.5 * (m * m + nn * nn) / (omega * omega);
        REQUIRE(std::isfinite(f));
        CHECK(std::abs(f - rhs) <= 1e-7 * std::max(1.0, std::abs(rhs)));
    }
    // limit value at the pole: 2 (n+1)^2 / w^2
    CHECK(pulse_kernel_F(n, pole, t)
          == Approx(2.0 * 4.0 / (pole * pole)).epsilon(1e-7));
}

TEST_CASE("decoherence exponent: closed form, dispatch, spot values") {
    const BathParams ohmic(1.0, 5.0, 1.0, 0.0);
    CHECK(gamma_uc(ohmic, 0.0) == 0.0);
    CHECK(gamma_uc_closed_form(ohmic, 0.0) == 0.0);
    CHECK(gamma_uc_closed_form(ohmic, 1.0) == Approx(0.5 * std::log(26.0)).epsilon(1e-12));
    CHECK(gamma_uc(ohmic, 1.0) == Approx(0.5 * std::log(26.0)).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_uc_closed_form(BathParams(1, 5, 1, 0.5), 1.0), UnsupportedConfiguration);
}

TEST_CASE("closed form vs quadrature for the unpulsed exponent and phase") {
    oracles::Rng rng(22);
    for (int k = 0; k < 40; ++k) {
        const BathParams bath(rng.uniform(0.05, 3.0), rng.uniform(0.5, 10.0),
                              rng.uniform(0.1, 3.0), 0.0);
        const double t = rng.uniform(0.01, 20.0);
        const double gc = gamma_uc_closed_form(bath, t);
        const double gq = gamma_uc_quadrature(bath, t, {}, kTight);
        CHECK(std::abs(gc - gq) <= 1e-8 * (1.0 + std::abs(gc)));
        const double pc = phi_shift(bath, t);
        const double pq = phi_shift_quadrature(bath, t, {}, kTight);
        CHECK(std::abs(pc - pq) <= 1e-8 * (1.0 + std::abs(pc)));
    }
}

TEST_CASE("pulsed kernels with n = 0 reproduce the free-evolution results") {
    oracles::Rng rng(23);
    for (int k = 0; k < 20; ++k) {
        const BathParams bath(rng.uniform(0.05, 3.0), rng.uniform(0.5, 10.0),
                              rng.uniform(0.1, 3.0), 0.0);
        const double t = rng.uniform(0.05, 15.0);
        const double g0 = gamma_uc_quadrature(bath, t, PulseSchedule{0}, kTight);
        CHECK(std::abs(g0 - gamma_uc_closed_form(bath, t)) <= 1e-10 * (1.0 + g0));
        const double p0 = phi_shift_quadrature(bath, t, PulseSchedule{0}, kTight);
        CHECK(std::abs(p0 - phi_shift(bath, t)) <= 1e-10 * (1.0 + std::abs(p0)));
    }
    // the lag path at n = 0 goes through the identical closed form
    const BathParams bath(1.0, 5.0, 0.5, 0.0);
    CHECK(gamma_uc(bath, 2.0, PulseSchedule{0}) == gamma_uc_closed_form(bath, 2.0));
}

TEST_CASE("pulsed closed-form path agrees with direct kernel quadrature") {
    oracles::Rng rng(24);
    for (int k = 0; k < 12; ++k) {
        const BathParams bath(rng.uniform(0.1, 2.0), rng.uniform(0.5, 8.0),
                              rng.uniform(0.1, 3.0), 0.0);
        const double t = rng.uniform(0.1, 10.0);
        const int n = rng.uniform_int(1, 8);
        const double lag = gamma_uc(bath, t, PulseSchedule{n});
        const double quad = gamma_uc_quadrature(bath, t, PulseSchedule{n}, kTight);
        CHECK(std::abs(lag - quad) <= 1e-8 * (1.0 + std::abs(quad)));
        const double phi_sum = phi_shift(bath, t, PulseSchedule{n});
        const double phi_quad = phi_shift_quadrature(bath, t, PulseSchedule{n}, kTight);
        CHECK(std::abs(phi_sum - phi_quad) <= 1e-8 * (1.0 + std::abs(phi_quad)));
    }
}

TEST_CASE("closed forms remain accurate arbitrarily close to the Ohmic exponent") {
    const double ohmic_g = gamma_uc_closed_form(BathParams(1.0, 5.0, 1.0, 0.0), 1.0);
    const double ohmic_p = phi_shift(BathParams(1.0, 5.0, 1.0, 0.0), 1.0);
    for (double eps : {1e-6, 1e-8, 1e-10}) {
        for (double sgn : {-1.0, 1.0}) {
            const BathParams bath(1.0, 5.0, 1.0 + sgn * eps, 0.0);
            CHECK(gamma_uc_closed_form(bath, 1.0) == Approx(ohmic_g).epsilon(1e-4));
            CHECK(phi_shift(bath, 1.0) == Approx(ohmic_p).epsilon(1e-4));
            CHECK(oracles::rel_diff(gamma_uc_closed_form(bath, 1.0),
                                    gamma_uc_quadrature(bath, 1.0, {}, kTight)) < 1e-8);
            CHECK(oracles::rel_diff(phi_shift(bath, 1.0),
                                    phi_shift_quadrature(bath, 1.0, {}, kTight)) < 1e-8);
        }
    }
    // deep sub-Ohmic corner: the gamma-function factor sits near its pole
    const BathParams deep(1.0, 5.0, 0.02, 0.0);
    CHECK(oracles::rel_diff(gamma_uc_closed_form(deep, 1.0),
                            gamma_uc_quadrature(deep, 1.0, {}, kTight)) < 1e-8);
}

TEST_CASE("lag decomposition stays accurate at large pulse counts") {
    const BathParams bath(1.0, 5.0, 0.5, 0.0);
    for (int n : {16, 32, 64}) {
        const double lag = gamma_uc(bath, 3.0, PulseSchedule{n});
        const double quad = gamma_uc_quadrature(bath, 3.0, PulseSchedule{n}, kTight);
        CHECK(std::abs(lag - quad) <= 1e-7 * (1.0 + std::abs(quad)));
        const double phi_sum = phi_shift(bath, 3.0, PulseSchedule{n});
        const double phi_quad = phi_shift_quadrature(bath, 3.0, PulseSchedule{n}, kTight);
        CHECK(std::abs(phi_sum - phi_quad) <= 1e-7 * (1.0 + std::abs(phi_quad)));
    }
}

TEST_CASE("thermal exponent: quadrature route and monotonicity in T") {
    const BathParams cold(1.0, 5.0, 0.5, 0.1);
    const BathParams warm(1.0, 5.0, 0.5, 1.0);
    const double g_cold = gamma_uc(cold, 1.0);
    const double g_warm = gamma_uc(warm, 1.0);
    const double g_zero = gamma_uc(cold.with_temperature(0.0), 1.0);
    CHECK(g_zero < g_cold);
    CHECK(g_cold < g_warm);  // thermal occupation only adds dephasing
}

TEST_CASE("exponent is exactly linear in the coupling") {
    oracles::Rng rng(25);
    for (int k = 0; k < 10; ++k) {
        const double g = rng.uniform(0.05, 4.0);
        const BathParams unit(1.0, 3.0, 0.7, 0.0);
        const BathParams scaled = unit.with_coupling(g);
        const double t = rng.uniform(0.1, 10.0);
        CHECK(gamma_uc(scaled, t) == Approx(g * gamma_uc(unit, t)).epsilon(1e-14));
        // quadrature path shares the structural scaling
        const BathParams unit_th = unit.with_temperature(0.8);
        CHECK(gamma_uc_quadrature(unit_th.with_coupling(g), t)
              == Approx(g * gamma_uc_quadrature(unit_th, t)).epsilon(1e-14));
    }
}

TEST_CASE("phase shift: spot value and pulsed reduction") {
    const BathParams ohmic(1.0, 5.0, 1.0, 0.0);
    CHECK(phi_shift(ohmic, 0.0) == 0.0);
    CHECK(phi_shift(ohmic, 1.0) == Approx(std::atan(5.0)).epsilon(1e-12));
    // temperature does not enter the phase integral
    CHECK(phi_shift(ohmic.with_temperature(2.0), 1.0) == phi_shift(ohmic, 1.0));
}

TEST_CASE("correlation correction to the exponent") {
    const ProbeParams probe;
    CHECK(gamma_corr(BathParams(1, 5, 1, 0.0), probe, 1.3) == 0.0);
    CHECK(gamma_corr(BathParams(1, 5, 1, 2.0), probe, 0.0) == 0.0);
    // phi = pi/2: Gamma_corr = -ln tanh(w0 / 2T)
    const BathParams th(1, 5, 1, 1.0);
    const double got = gamma_corr(th, probe, 0.5 * std::numbers::pi);
    CHECK(got == Approx(-std::log(std::tanh(0.5))).epsilon(1e-12));
    CHECK(got == Approx(0.7719368329).epsilon(1e-9));
    // tiny temperatures must not overflow
    CHECK(gamma_corr(BathParams(1, 5, 1, 1e-6), probe, 1.0) == 0.0);
    oracles::Rng rng(26);
    for (int k = 0; k < 50; ++k) {
        const BathParams bath(1, 5, 1, rng.uniform(0.01, 5.0));
        const double phi = rng.uniform(-8.0, 8.0);
        const double v = gamma_corr(bath, probe, phi);
        CHECK(v >= 0.0);
        CHECK(std::isfinite(v));
        // strictly positive away from the zero-temperature/zero-phase cases
        if (bath.T >= 0.05 && std::abs(std::sin(phi)) >= 0.01) CHECK(v > 0.0);
    }
}

TEST_CASE("level shift: limits and continuous branch") {
    const ProbeParams probe;
    CHECK(chi_shift(BathParams(1, 5, 1, 0.0), probe, 1.234) == 1.234);
    CHECK(chi_shift(BathParams(1, 5, 1, 0.7), probe, 0.0) == 0.0);
    CHECK(std::abs(chi_shift(BathParams(1, 5, 1, 1e9), probe, 1.2)) < 1e-8);

    // continuity of the lift where phi crosses pi/2 (strong coupling): chi
    // increments stay comparable to phi increments, with no pi-sized jumps
    const BathParams strong(5.0, 5.0, 0.5, 0.8);
    const double lam = std::tanh(probe.omega_0 / (2.0 * strong.T));
    double prev_phi = 0.0;
    double prev_chi = 0.0;
    bool crossed = false;
    for (int i = 1; i <= 2000; ++i) {
        const double t = 4.0 * i / 2000.0;
        const double phi = phi_shift(strong, t);
        const double chi = chi_shift(strong, probe, phi);
        if (i > 1) {
            CHECK(std::abs(chi - prev_chi) <= std::abs(phi - prev_phi) / lam + 1e-12);
            if ((prev_phi - 0.5 * std::numbers::pi) * (phi - 0.5 * std::numbers::pi) < 0.0)
                crossed = true;
        }
        prev_phi = phi;
        prev_chi = chi;
    }
    CHECK(crossed);  // the scan actually exercised the branch boundary
}

TEST_CASE("coherence record assembles consistently") {
    const BathParams ohmic(1.0, 5.0, 1.0, 0.0);
    ProbeParams probe;
    probe.gamma_0 = 0.25;
    const auto zero = coherence_record(ohmic, probe, 0.0);
    CHECK(zero.gamma_uc == 0.0);
    CHECK(zero.phi == 0.0);
    CHECK(zero.chi == 0.0);
    CHECK(zero.gamma_total == Approx(0.25));

    const auto rec = coherence_record(ohmic, ProbeParams{}, 1.0);
    CHECK(rec.gamma_uc == Approx(0.5 * std::log(26.0)).epsilon(1e-12));
    CHECK(rec.gamma_corr == 0.0);
    CHECK(rec.phi == Approx(std::atan(5.0)).epsilon(1e-12));
    CHECK(rec.chi == rec.phi);
    CHECK(rec.gamma_total == rec.gamma_uc);

    // fields vanish as t -> 0+
    const auto small = coherence_record(BathParams(1.0, 5.0, 0.5, 0.7), ProbeParams{}, 1e-8);
    CHECK(std::abs(small.gamma_uc) < 1e-6);
    CHECK(std::abs(small.phi) < 1e-6);
    CHECK(std::abs(small.gamma_corr) < 1e-6);
}
