// bath.hpp — Environment model: exponential-cutoff spectral density and its exact parameter partials

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace probeqfi {

// Which environment parameter an estimation run targets.
enum class EstimationTarget { CutoffFrequency, Coupling, Temperature };

inline const char* to_string(EstimationTarget target) {
    switch (target) {
        case EstimationTarget::CutoffFrequency: return "omega_c";
        case EstimationTarget::Coupling: return "G";
        case EstimationTarget::Temperature: return "T";
    }
    return "?";
}

enum class Ohmicity { SubOhmic, Ohmic, SuperOhmic };

// Bath description in probe units (hbar = k_B = 1, frequencies in units of
// the probe splitting). T = 0 is representable exactly; thermal factors are
// taken in their zero-temperature limit analytically rather than via a
// large-beta evaluation.
struct BathParams {
    double G;        // coupling strength, > 0
    double omega_c;  // cutoff frequency, > 0
    double s;        // Ohmicity exponent, > 0
    double T;        // temperature, >= 0

    BathParams(double coupling, double cutoff, double ohmicity_exponent, double temperature = 0.0)
        : G(coupling), omega_c(cutoff), s(ohmicity_exponent), T(temperature) {
        if (!(std::isfinite(G) && G > 0.0))
            throw std::invalid_argument("BathParams: coupling G must be finite and > 0");
        if (!(std::isfinite(omega_c) && omega_c > 0.0))
            throw std::invalid_argument("BathParams: cutoff omega_c must be finite and > 0");
        if (!(std::isfinite(s) && s > 0.0))
            throw std::invalid_argument("BathParams: Ohmicity exponent s must be finite and > 0");
        if (!(std::isfinite(T) && T >= 0.0))
            throw std::invalid_argument("BathParams: temperature T must be finite and >= 0");
    }

    double beta() const {
        return T > 0.0 ? 1.0 / T : std::numeric_limits<double>::infinity();
    }

    Ohmicity ohmicity() const {
        if (s < 1.0) return Ohmicity::SubOhmic;
        if (s > 1.0) return Ohmicity::SuperOhmic;
        return Ohmicity::Ohmic;
    }

    // Closed forms dispatch |s-1| < 1e-12 to the Ohmic branch to avoid the
    // removable singularity of tgamma(s-1) at s = 1.
    bool ohmic_window() const { return std::abs(s - 1.0) < 1e-12; }

    BathParams with_coupling(double g) const { return BathParams(g, omega_c, s, T); }
    BathParams with_cutoff(double wc) const { return BathParams(G, wc, s, T); }
    BathParams with_temperature(double temp) const { return BathParams(G, omega_c, s, temp); }
    BathParams with_ohmicity(double sv) const { return BathParams(G, omega_c, sv, T); }
};

// J(w) = G * w^s / omega_c^{s-1} * exp(-w/omega_c). The unit-coupling factor
// is computed first so that J is exactly linear in G.
inline double spectral_density(const BathParams& bath, double omega) {
    if (!(omega > 0.0))
        throw std::domain_error("spectral_density: omega must be > 0");
    const double unit = std::pow(omega, bath.s) * std::pow(bath.omega_c, 1.0 - bath.s)
                      * std::exp(-omega / bath.omega_c);
    return bath.G * unit;
}

// Exact partial of J with respect to the coupling or the cutoff. Used to
// differentiate kernel integrals under the integral sign.
inline double spectral_density_partial(const BathParams& bath, double omega, EstimationTarget target) {
    const double j = spectral_density(bath, omega);
    switch (target) {
        case EstimationTarget::Coupling:
            return j / bath.G;
        case EstimationTarget::CutoffFrequency:
            return j * ((1.0 - bath.s) / bath.omega_c + omega / (bath.omega_c * bath.omega_c));
        case EstimationTarget::Temperature:
            break;
    }
    throw std::invalid_argument("spectral_density_partial: J does not depend on T");
}

} // namespace probeqfi
