// fisher.hpp — Quantum and classical Fisher information of the dephasing probe

#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "probeqfi/bath.hpp"
#include "probeqfi/coherence.hpp"
#include "probeqfi/errors.hpp"
#include "probeqfi/sensitivity.hpp"

namespace probeqfi {

inline double normalize_angle(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(angle, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

// Azimuth of the equatorial projective measurement pair.
struct MeasurementSetting {
    double phi_hat = 0.0;

    MeasurementSetting() = default;
    explicit MeasurementSetting(double angle) : phi_hat(normalize_angle(angle)) {}
};

struct FisherReport {
    double value = 0.0;
    EstimationTarget target = EstimationTarget::Coupling;
    double t = 0.0;
    int n = 0;
    bool correlations_included = true;
    double term_decoherence = 0.0;  // contribution of the decoherence-exponent sensitivity
    double term_levelshift = 0.0;   // contribution of the level-shift sensitivity
    std::optional<double> phi_hat_opt;  // optimal measurement angle, when attached
    bool degenerate = false;            // t = 0: the state carries no information
    bool boundary = false;              // an optimizer stopped at the search boundary
};

// Quantum Fisher information
//   H_Q = sin^2(th0) (dGamma/dx)^2 / (e^{2 Gamma} - 1)
//       + sin^2(th0) e^{-2 Gamma} (dchi/dx)^2,
// Gamma = Gamma_uc + Gamma_corr + Gamma_0. A mixed probe enters through the
// same expression with its effective angle and Gamma_0 offset. With
// correlations excluded, Gamma drops Gamma_corr and the level-shift term
// vanishes, which is the product-state baseline.
inline FisherReport qfi(const BathParams& bath, const ProbeParams& probe, double t,
                        const PulseSchedule& pulses, EstimationTarget target,
                        bool correlations_included = true) {
    probe.validate();
    pulses.validate();
    if (!(t >= 0.0)) throw std::domain_error("qfi: t must be >= 0");
    if (target == EstimationTarget::Temperature && !(bath.T > 0.0))
        throw std::domain_error("qfi: temperature estimation requires T > 0");

    FisherReport rep;
    rep.target = target;
    rep.t = t;
    rep.n = pulses.n;
    rep.correlations_included = correlations_included;
    if (t == 0.0) {
        // Gamma(0) = 0 makes the first term 0/0; the state is x-independent,
        // so report zero and flag it rather than a configuration-dependent limit.
        rep.degenerate = true;
        return rep;
    }

    const auto rec = coherence_record(bath, probe, t, pulses);
    const auto sens = sensitivities(bath, probe, t, pulses, target);

    const double gamma = rec.gamma_uc + probe.gamma_0
                       + (correlations_included ? rec.gamma_corr : 0.0);
    const double dgamma = correlations_included ? sens.dgamma_dx() : sens.dgamma_uc_dx;
    const double dchi = correlations_included ? sens.dchi_dx : 0.0;

    const double sn = std::sin(probe.theta_0);
    const double sin2 = sn * sn;
    const double e1 = std::expm1(2.0 * gamma);
    if (!(e1 > 0.0)) {
        rep.degenerate = true;
        return rep;
    }
    rep.term_decoherence = sin2 * dgamma * dgamma / e1;
    rep.term_levelshift = sin2 * std::exp(-2.0 * gamma) * dchi * dchi;
    rep.value = rep.term_decoherence + rep.term_levelshift;
    return rep;
}

// Fisher information of the equatorial projective pair at azimuth phi_hat,
//   F_c = [cos(D) dGamma/dx + sin(D) dchi/dx]^2 / (e^{2 Gamma} - cos^2 D),
//   D = omega_0 t + phi_0 + chi - phi_hat.
// Derived for the equatorial probe (theta_0 = pi/2); Gamma includes any
// probe mixedness.
inline double classical_fisher(const BathParams& bath, const ProbeParams& probe, double t,
                               const PulseSchedule& pulses, EstimationTarget target,
                               const MeasurementSetting& m) {
    probe.validate();
    pulses.validate();
    if (!(t > 0.0)) throw std::domain_error("classical_fisher: t must be > 0");
    if (target == EstimationTarget::Temperature && !(bath.T > 0.0))
        throw std::domain_error("classical_fisher: temperature estimation requires T > 0");

    const auto rec = coherence_record(bath, probe, t, pulses);
    const auto sens = sensitivities(bath, probe, t, pulses, target);
    const double gamma = rec.gamma_total;
    const double delta = probe.omega_0 * t + probe.phi_0 + rec.chi - m.phi_hat;
    const double cd = std::cos(delta);
    const double sd = std::sin(delta);
    const double denom = std::expm1(2.0 * gamma) + sd * sd;  // e^{2G} - cos^2 D
    if (!(denom > 1e-300))
        throw DegenerateMeasurement("classical_fisher: outcome distribution is deterministic");
    const double num = cd * sens.dgamma_dx() + sd * sens.dchi_dx;
    return num * num / denom;
}

// Azimuth maximizing the classical Fisher information:
//   phi_hat = omega_0 t + phi_0 + chi - atan2(dchi (1 - e^{-2 Gamma}), dGamma).
// At that angle F_c attains the quantum Fisher information (equatorial probe).
inline MeasurementSetting optimal_phi_hat(const BathParams& bath, const ProbeParams& probe,
                                          double t, const PulseSchedule& pulses,
                                          EstimationTarget target) {
    probe.validate();
    pulses.validate();
    if (!(t > 0.0)) throw std::domain_error("optimal_phi_hat: t must be > 0");

    const auto rec = coherence_record(bath, probe, t, pulses);
    const auto sens = sensitivities(bath, probe, t, pulses, target);
    const double a = sens.dgamma_dx();
    const double b = sens.dchi_dx;
    if (a == 0.0 && b == 0.0)
        throw NoInformation("optimal_phi_hat: both sensitivities vanish; every angle is equally uninformative");
    const double delta_opt = std::atan2(b * (-std::expm1(-2.0 * rec.gamma_total)), a);
    return MeasurementSetting(probe.omega_0 * t + probe.phi_0 + rec.chi - delta_opt);
}

} // namespace probeqfi
