// coherence.hpp — Dephasing functions of the probe: decoherence exponents, phase shifts, pulse kernels

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "probeqfi/bath.hpp"
#include "probeqfi/errors.hpp"
#include "probeqfi/quadrature.hpp"

namespace probeqfi {

// Two-level probe. theta_0 = pi/2 maximizes the extractable information, so
// it is the default; gamma_0 > 0 models an initially mixed probe.
struct ProbeParams {
    double omega_0 = 1.0;                      // level splitting
    double theta_0 = 0.5 * std::numbers::pi;   // initial Bloch polar angle
    double phi_0 = 0.0;                        // initial azimuth
    double gamma_0 = 0.0;                      // initial mixedness exponent; 0 = pure

    void validate() const {
        if (!(std::isfinite(omega_0) && omega_0 > 0.0))
            throw std::invalid_argument("ProbeParams: omega_0 must be > 0");
        if (!(theta_0 >= 0.0 && theta_0 <= std::numbers::pi))
            throw std::invalid_argument("ProbeParams: theta_0 must lie in [0, pi]");
        if (!(std::isfinite(phi_0)))
            throw std::invalid_argument("ProbeParams: phi_0 must be finite");
        if (!(std::isfinite(gamma_0) && gamma_0 >= 0.0))
            throw std::invalid_argument("ProbeParams: gamma_0 must be >= 0");
    }
};

// n equally spaced pi-pulses over the interaction window; n = 0 means free
// evolution. Pulse instants are t_j = j t / (n+1).
struct PulseSchedule {
    int n = 0;

    void validate() const {
        if (n < 0) throw std::invalid_argument("PulseSchedule: n must be >= 0");
    }

    std::vector<double> pulse_times(double t) const {
        validate();
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j) out.push_back(j * t / (n + 1.0));
        return out;
    }
};

struct CoherenceRecord {
    double t = 0.0;
    double gamma_uc = 0.0;    // decoherence exponent of the product-state preparation
    double gamma_corr = 0.0;  // correction from pre-preparation correlations (0 at T = 0)
    double phi = 0.0;         // correlation phase integral
    double chi = 0.0;         // level shift, continuous branch; equals phi at T = 0
    double gamma_total = 0.0; // gamma_uc + gamma_corr + probe mixedness
};

// Filter kernel of the pulsed decoherence exponent,
// tan^2(w t / (2n+2)) (1 + (-1)^n cos(w t)) / w^2. Away from the tan poles it
// is evaluated as (t/(2n+2))^2 (tan x / x)^2 (1 + (-1)^n cos(w t)), which is
// stable down to vanishing w. Near a pole, with d the offset to it,
// tan(x) = -cot(d) and the cosine factor equals 2 sin^2((n+1) d) exactly, so
// the removable singularity never materializes.
inline double pulse_kernel_F(int n, double omega, double t) {
    if (n < 0) throw std::invalid_argument("pulse_kernel_F: n must be >= 0");
    if (!(omega > 0.0)) throw std::domain_error("pulse_kernel_F: omega must be > 0");
    if (!(t >= 0.0)) throw std::domain_error("pulse_kernel_F: t must be >= 0");
    if (t == 0.0) return 0.0;

    const double x = omega * t / (2.0 * n + 2.0);
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    if (x == 0.0)  // w t underflowed entirely
        return parity > 0.0 ? t * t / (2.0 * (n + 1.0) * (n + 1.0)) : 0.0;
    if (std::abs(std::cos(x)) > 0.01) {
        const double stretched = t / (2.0 * n + 2.0) * (std::tan(x) / x);  // tan(x) / w
        return stretched * stretched * (1.0 + parity * std::cos(omega * t));
    }
    const double d = std::remainder(x - 0.5 * std::numbers::pi, std::numbers::pi);
    if (d == 0.0) return 2.0 * (n + 1.0) * (n + 1.0) / (omega * omega);
    const double r = std::cos(d) * std::sin((n + 1.0) * d) / std::sin(d);
    return 2.0 * r * r / (omega * omega);
}

// Modulation kernel of the pulsed phase integral,
// (-1)^{n+1} sin(w t) + 2 sum_{j=1}^{n} (-1)^j sin(j w t / (n+1)).
// The alternating sum cancels to O(w t), so tiny arguments use the leading
// Taylor terms instead of drowning in rounding noise.
inline double pulse_kernel_M(int n, double omega, double t) {
    if (n < 0) throw std::invalid_argument("pulse_kernel_M: n must be >= 0");
    if (!(omega > 0.0)) throw std::domain_error("pulse_kernel_M: omega must be > 0");
    if (!(t >= 0.0)) throw std::domain_error("pulse_kernel_M: t must be >= 0");
    const double parity = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
    const double theta = omega * t / (n + 1.0);
    if (theta < 1e-5) {
        double s1 = parity * (n + 1.0);
        double s3 = parity * (n + 1.0) * (n + 1.0) * (n + 1.0);
        double sign = -1.0;
        for (int j = 1; j <= n; ++j) {
            s1 += 2.0 * sign * j;
            s3 += 2.0 * sign * j * j * j;
            sign = -sign;
        }
        return s1 * theta - s3 * theta * theta * theta / 6.0;
    }
    double acc = parity * std::sin(omega * t);
    double sign = -1.0;
    for (int j = 1; j <= n; ++j) {
        acc += 2.0 * sign * std::sin(j * omega * t / (n + 1.0));
        sign = -sign;
    }
    return acc;
}

namespace detail {

inline double coth(double a) {
    return 1.0 + 2.0 / std::expm1(2.0 * a);
}

inline double sech(double a) {
    const double e = std::exp(-std::abs(a));
    return 2.0 * e / (1.0 + e * e);
}

// Unpulsed zero-temperature decoherence exponent in closed form; evaluated at
// scaled times by the pulsed path.
inline double gamma_u_closed(const BathParams& bath, double t) {
    const double x = bath.omega_c * t;
    if (bath.ohmic_window()) return 0.5 * bath.G * std::log1p(x * x);
    return bath.G * gamma_function(bath.s - 1.0) * binom_one_minus_u(x, bath.s - 1.0);
}

// Unpulsed phase integral in closed form (temperature-independent).
inline double phi_u_closed(const BathParams& bath, double t) {
    const double x = bath.omega_c * t;
    if (bath.ohmic_window()) return bath.G * std::atan(x);
    return bath.G * gamma_function(bath.s - 1.0) * binom_v(x, bath.s - 1.0);
}

// Signed segment weights of the pulse modulation: b_0 = 1, b_j = 2(-1)^j for
// 1 <= j <= n, b_{n+1} = (-1)^{n+1}. The sine/cosine companion sums of the
// modulation are M = sum b_j sin(j th), N = sum b_j cos(j th).
inline std::vector<double> pulse_weights(int n) {
    std::vector<double> b(static_cast<std::size_t>(n) + 2);
    b[0] = 1.0;
    double sign = -1.0;
    for (int j = 1; j <= n; ++j) {
        b[static_cast<std::size_t>(j)] = 2.0 * sign;
        sign = -sign;
    }
    b[static_cast<std::size_t>(n) + 1] = (n % 2 == 0) ? -1.0 : 1.0;
    return b;
}

// Autocorrelation d_m = sum_j b_j b_{j+m}, m = 1..n+1 (index m-1). Because
// M^2 + N^2 = sum_{j,k} b_j b_k cos((j-k) th) and sum b_j = 0, the pulsed
// decoherence exponent collapses to -sum_m d_m gamma_u(m t/(n+1)).
inline std::vector<double> pulse_lag_coefficients(int n) {
    const auto b = pulse_weights(n);
    std::vector<double> d(static_cast<std::size_t>(n) + 1);
    for (int m = 1; m <= n + 1; ++m) {
        double acc = 0.0;
        for (int j = 0; j + m <= n + 1; ++j)
            acc += b[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(j + m)];
        d[static_cast<std::size_t>(m) - 1] = acc;
    }
    return d;
}

template <class G>
double pulse_lag_combination(int n, double t, G&& unpulsed) {
    const auto d = pulse_lag_coefficients(n);
    double acc = 0.0;
    for (int m = 1; m <= n + 1; ++m)
        acc += d[static_cast<std::size_t>(m) - 1] * unpulsed(m * t / (n + 1.0));
    return -acc;
}

template <class G>
double pulse_alternating_combination(int n, double t, G&& unpulsed) {
    const auto b = pulse_weights(n);
    double acc = 0.0;
    for (int j = 1; j <= n + 1; ++j)
        acc += b[static_cast<std::size_t>(j)] * unpulsed(j * t / (n + 1.0));
    return -acc;
}

inline QuadratureSpec kernel_spec(const BathParams& bath, double t, QuadratureSpec base,
                                  bool singular_endpoint) {
    base.oscillation_frequency = t;
    base.decay_scale = bath.omega_c;
    base.endpoint_power = (singular_endpoint && bath.s < 1.0) ? 1.0 - bath.s : 0.0;
    return base;
}

inline double clamp_exponent(double g) {
    if (g < 0.0) {
        if (g > -1e-8) return 0.0;
        throw EvaluationError("coherence: decoherence exponent came out negative");
    }
    return g;
}

} // namespace detail

// Decoherence exponent by direct quadrature of the kernel integral; this is
// the oracle of record for the closed-form routes. Exactly linear in G by
// construction (the unit-coupling kernel is integrated and scaled).
inline double gamma_uc_quadrature(const BathParams& bath, double t,
                                  const PulseSchedule& pulses = {},
                                  QuadratureSpec spec = {}) {
    pulses.validate();
    if (!(t >= 0.0)) throw std::domain_error("gamma_uc_quadrature: t must be >= 0");
    if (t == 0.0) return 0.0;
    const BathParams unit = bath.with_coupling(1.0);
    const bool thermal = bath.T > 0.0;
    auto integrand = [&](double w) {
        double val = spectral_density(unit, w) * pulse_kernel_F(pulses.n, w, t);
        if (thermal) val *= detail::coth(w / (2.0 * bath.T));
        return val;
    };
    const auto r = integrate_semi_infinite(integrand, detail::kernel_spec(bath, t, spec, thermal));
    return detail::clamp_exponent(bath.G * r.value);
}

// Phase integral by direct quadrature of the modulation kernel. The sign is
// fixed so that n = 0 reproduces the free-evolution phase integral
// \int J(w)/w^2 sin(w t) dw exactly.
inline double phi_shift_quadrature(const BathParams& bath, double t,
                                   const PulseSchedule& pulses = {},
                                   QuadratureSpec spec = {}) {
    pulses.validate();
    if (!(t >= 0.0)) throw std::domain_error("phi_shift_quadrature: t must be >= 0");
    if (t == 0.0) return 0.0;
    const BathParams unit = bath.with_coupling(1.0);
    auto integrand = [&](double w) {
        return spectral_density(unit, w) / (w * w) * pulse_kernel_M(pulses.n, w, t);
    };
    const auto r = integrate_semi_infinite(integrand, detail::kernel_spec(bath, t, spec, true));
    return -bath.G * r.value;
}

// Closed form of the unpulsed zero-temperature decoherence exponent.
inline double gamma_uc_closed_form(const BathParams& bath, double t) {
    if (bath.T != 0.0)
        throw UnsupportedConfiguration("gamma_uc_closed_form: requires T = 0");
    if (!(t >= 0.0)) throw std::domain_error("gamma_uc_closed_form: t must be >= 0");
    return detail::clamp_exponent(detail::gamma_u_closed(bath, t));
}

// Decoherence exponent Gamma_uc(t). Zero-temperature configurations use the
// closed forms (the pulsed case through the exact lag decomposition of the
// filter kernel); thermal configurations integrate the kernel.
inline double gamma_uc(const BathParams& bath, double t, const PulseSchedule& pulses = {}) {
    pulses.validate();
    if (!(t >= 0.0)) throw std::domain_error("gamma_uc: t must be >= 0");
    if (t == 0.0) return 0.0;
    if (bath.T == 0.0) {
        if (pulses.n == 0) return detail::clamp_exponent(detail::gamma_u_closed(bath, t));
        const double g = detail::pulse_lag_combination(
            pulses.n, t, [&](double tau) { return detail::gamma_u_closed(bath, tau); });
        return detail::clamp_exponent(g);
    }
    return gamma_uc_quadrature(bath, t, pulses);
}

// Phase integral phi(t); closed form for every temperature (the kernel has no
// thermal factor), with the pulsed case as a finite alternating combination
// of the unpulsed closed form.
inline double phi_shift(const BathParams& bath, double t, const PulseSchedule& pulses = {}) {
    pulses.validate();
    if (!(t >= 0.0)) throw std::domain_error("phi_shift: t must be >= 0");
    if (t == 0.0) return 0.0;
    if (pulses.n == 0) return detail::phi_u_closed(bath, t);
    return detail::pulse_alternating_combination(
        pulses.n, t, [&](double tau) { return detail::phi_u_closed(bath, tau); });
}

// Correlation correction to the decoherence exponent,
// -1/2 ln(1 - sin^2(phi) / cosh^2(w0 / 2T)). Exactly zero at T = 0.
inline double gamma_corr(const BathParams& bath, const ProbeParams& probe, double phi) {
    if (bath.T == 0.0) return 0.0;
    const double sech = detail::sech(probe.omega_0 / (2.0 * bath.T));
    const double r = std::sin(phi) * sech;
    return -0.5 * std::log1p(-r * r);
}

// Level shift chi with tan(chi) = tanh(w0 / 2T) tan(phi), lifted to the same
// pi-branch as phi so that chi is continuous in t and equals phi exactly at
// T = 0.
inline double chi_shift(const BathParams& bath, const ProbeParams& probe, double phi) {
    if (bath.T == 0.0) return phi;
    const double lam = std::tanh(probe.omega_0 / (2.0 * bath.T));
    const double k = std::round(phi / std::numbers::pi);
    const double r = phi - k * std::numbers::pi;
    return k * std::numbers::pi + std::atan(lam * std::tan(r));
}

inline CoherenceRecord coherence_record(const BathParams& bath, const ProbeParams& probe,
                                        double t, const PulseSchedule& pulses = {}) {
    probe.validate();
    if (!(t >= 0.0)) throw std::domain_error("coherence_record: t must be >= 0");
    CoherenceRecord rec;
    rec.t = t;
    rec.gamma_uc = gamma_uc(bath, t, pulses);
    rec.phi = phi_shift(bath, t, pulses);
    rec.gamma_corr = gamma_corr(bath, probe, rec.phi);
    rec.chi = chi_shift(bath, probe, rec.phi);
    rec.gamma_total = rec.gamma_uc + rec.gamma_corr + probe.gamma_0;
    if (!std::isfinite(rec.gamma_total) || !std::isfinite(rec.chi))
        throw EvaluationError("coherence_record: non-finite dephasing functions");
    return rec;
}

} // namespace probeqfi
