// quadrature.hpp — Semi-infinite oscillatory quadrature and the special functions used by the closed forms

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "probeqfi/errors.hpp"

namespace probeqfi {

// Tolerances and structure hints for a semi-infinite kernel integral.
// oscillation_frequency is the time t when the integrand carries sin/cos(w t)
// factors (the fastest one, for pulsed kernels). decay_scale is the
// exponential envelope scale (the cutoff frequency for spectral kernels).
// endpoint_power p declares an integrable w^{-p} singularity at w = 0.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_panels = 10'000;
    double oscillation_frequency = 0.0;  // 0 = no oscillation hint
    double decay_scale = 1.0;
    double endpoint_power = 0.0;         // in [0, 1)

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
        if (max_panels < 1)
            throw std::invalid_argument("QuadratureSpec: max_panels must be >= 1");
        if (!(decay_scale > 0.0))
            throw std::invalid_argument("QuadratureSpec: decay_scale must be > 0");
        if (!(endpoint_power >= 0.0 && endpoint_power < 1.0))
            throw std::invalid_argument("QuadratureSpec: endpoint_power must lie in [0, 1)");
        if (!(oscillation_frequency >= 0.0))
            throw std::invalid_argument("QuadratureSpec: oscillation_frequency must be >= 0");
    }
};

struct IntegrationResult {
    double value = 0.0;
    double error_bound = 0.0;
    int panels = 0;
};

namespace detail {

// Gauss-Kronrod 15(7) abscissae and weights on [-1, 1] (QUADPACK dqk15).
inline constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEstimate {
    double value = 0.0;
    double error = 0.0;
    double resabs = 0.0;  // integral of |f| over the panel
};

// One GK15 pass over [a, b] with the QUADPACK error heuristic.
template <class F>
PanelEstimate gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resk = kKronrodW[7] * fc;
    double resg = kGaussW[3] * fc;
    double resabs = kKronrodW[7] * std::abs(fc);

    double fv1[7];
    double fv2[7];
    for (int i = 0; i < 7; ++i) {
        fv1[i] = f(center - half * kGkNodes[i]);
        fv2[i] = f(center + half * kGkNodes[i]);
        const double fsum = fv1[i] + fv2[i];
        resk += kKronrodW[i] * fsum;
        resabs += kKronrodW[i] * (std::abs(fv1[i]) + std::abs(fv2[i]));
        if (i % 2 == 1) resg += kGaussW[(i - 1) / 2] * fsum;
    }

    const double mean = 0.5 * resk;
    double resasc = kKronrodW[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kKronrodW[i] * (std::abs(fv1[i] - mean) + std::abs(fv2[i] - mean));

    PanelEstimate out;
    out.value = resk * half;
    resabs *= half;
    resasc *= half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    out.error = err;
    out.resabs = resabs;
    if (!std::isfinite(out.value) || !std::isfinite(out.error))
        throw EvaluationError("integrate_semi_infinite: integrand produced a non-finite value");
    return out;
}

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    double resabs = 0.0;
    bool transformed = false;  // panel lives in substituted coordinates
};

} // namespace detail

// Integrates f over (0, inf). Strategy: an optional substituted head segment
// that removes the declared endpoint singularity (w = u^{1/(1-p)}), panels of
// width <= pi/(2 t) out to the cut W = max(50 * decay_scale, 10 / t), global
// worst-panel refinement, and an envelope bound for the remainder past W.
template <class F>
IntegrationResult integrate_semi_infinite(F&& f, const QuadratureSpec& spec = {}) {
    spec.validate();
    const double t = spec.oscillation_frequency;
    const double cut = std::max(50.0 * spec.decay_scale, t > 0.0 ? 10.0 / t : 0.0);

    const double p = spec.endpoint_power;
    const double q = p > 0.0 ? 1.0 / (1.0 - p) : 1.0;
    auto transformed = [&f, q](double u) {
        const double w = std::pow(u, q);
        return f(w) * q * std::pow(u, q - 1.0);
    };

    // Head segment ends before the first oscillation matters.
    double head_end = 0.0;
    if (p > 0.0) {
        head_end = std::min(cut / 16.0, 0.5 * spec.decay_scale);
        if (t > 0.0) head_end = std::min(head_end, 0.25 / t);
    }

    std::vector<detail::Panel> panels;
    panels.reserve(256);
    auto add_panel = [&](double a, double b, bool tr) {
        detail::Panel panel;
        panel.a = a;
        panel.b = b;
        panel.transformed = tr;
        const auto est = tr ? detail::gk15(transformed, a, b) : detail::gk15(f, a, b);
        panel.value = est.value;
        panel.error = est.error;
        panel.resabs = est.resabs;
        panels.push_back(panel);
    };

    if (head_end > 0.0) {
        const double u_end = std::pow(head_end, 1.0 - p);
        for (int k = 0; k < 4; ++k)
            add_panel(u_end * k / 4.0, u_end * (k + 1) / 4.0, true);
    }

    // Main region: panel width bounded by a quarter oscillation period.
    const double span = cut - head_end;
    double width = t > 0.0 ? std::min(0.5 * std::numbers::pi / t, span / 8.0) : span / 16.0;
    int count = static_cast<int>(std::ceil(span / width));
    const int init_cap = std::max(16, spec.max_panels * 3 / 4);
    if (count > init_cap) count = init_cap;
    for (int k = 0; k < count; ++k)
        add_panel(head_end + span * k / count, head_end + span * (k + 1) / count, false);

    // Envelope bound for the tail past the cut.
    double tail_peak = 0.0;
    for (int k = 0; k <= 3; ++k)
        tail_peak = std::max(tail_peak, std::abs(f(cut + k * spec.decay_scale / 3.0)));
    const double tail_bound = 2.0 * tail_peak * spec.decay_scale;
    if (!std::isfinite(tail_bound))
        throw EvaluationError("integrate_semi_infinite: integrand non-finite past the cut");

    auto worse = [](const detail::Panel& x, const detail::Panel& y) { return x.error < y.error; };
    std::make_heap(panels.begin(), panels.end(), worse);

    double total = 0.0;
    double total_err = tail_bound;
    double total_resabs = 0.0;
    for (const auto& panel : panels) {
        total += panel.value;
        total_err += panel.error;
        total_resabs += panel.resabs;
    }

    // The per-panel estimates are floored at the roundoff level of |f|, so an
    // oscillatory integral with heavy cancellation can never certify below
    // ~eps * int|f|; the convergence target acknowledges that floor.
    const double eps = std::numeric_limits<double>::epsilon();
    auto target = [&] {
        return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) + 64.0 * eps * total_resabs;
    };

    while (total_err > target() && static_cast<int>(panels.size()) < spec.max_panels) {
        std::pop_heap(panels.begin(), panels.end(), worse);
        const detail::Panel worst = panels.back();
        panels.pop_back();
        total -= worst.value;
        total_err -= worst.error;
        total_resabs -= worst.resabs;

        const double mid = 0.5 * (worst.a + worst.b);
        add_panel(worst.a, mid, worst.transformed);
        total += panels.back().value;
        total_err += panels.back().error;
        total_resabs += panels.back().resabs;
        std::push_heap(panels.begin(), panels.end(), worse);
        add_panel(mid, worst.b, worst.transformed);
        total += panels.back().value;
        total_err += panels.back().error;
        total_resabs += panels.back().resabs;
        std::push_heap(panels.begin(), panels.end(), worse);
    }

    IntegrationResult out;
    out.value = total;
    out.error_bound = total_err;
    out.panels = static_cast<int>(panels.size());
    if (total_err > target())
        throw ConvergenceError("integrate_semi_infinite: panel budget exhausted", total, total_err);
    return out;
}

// Real gamma function; rejects the poles at nonpositive integers. Negative
// non-integer arguments are supported (needed down to -0.9 and below).
inline double gamma_function(double x) {
    if (std::isnan(x))
        throw std::domain_error("gamma_function: NaN argument");
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_function: pole at nonpositive integer argument");
    return std::tgamma(x);
}

// Principal-branch conjugate pair (1 +/- i w_c t)^{-p} together with the real
// combinations u = cos(p atan(x)) / (1+x^2)^{p/2} and
// v = sin(p atan(x)) / (1+x^2)^{p/2}, x = w_c t, that the closed forms use.
struct ComplexBinomialPower {
    std::complex<double> plus;   // (1 + i w_c t)^{-p}
    std::complex<double> minus;  // (1 - i w_c t)^{-p}
    double u = 0.0;              // (plus + minus) / 2
    double v = 0.0;              // (minus - plus) / 2i
};

namespace detail {

inline double binom_radial(double x, double power) {
    return std::exp(-0.5 * power * std::log1p(x * x));
}

inline double binom_u(double x, double power) {
    return binom_radial(x, power) * std::cos(power * std::atan(x));
}

inline double binom_v(double x, double power) {
    return binom_radial(x, power) * std::sin(power * std::atan(x));
}

// 1 - u_p evaluated without cancellation (u -> 1 linearly as p -> 0, which
// matters for near-Ohmic exponents).
inline double binom_one_minus_u(double x, double power) {
    const double angle = std::atan(x);
    const double m = 0.5 * power * std::log1p(x * x);
    const double sh = std::sin(0.5 * power * angle);
    return -std::expm1(-m) + std::exp(-m) * 2.0 * sh * sh;
}

} // namespace detail

inline ComplexBinomialPower complex_binomial_power(double omega_c, double t, double power) {
    const double x = omega_c * t;
    ComplexBinomialPower out;
    out.u = detail::binom_u(x, power);
    out.v = detail::binom_v(x, power);
    out.plus = std::complex<double>(out.u, -out.v);
    out.minus = std::complex<double>(out.u, out.v);
    return out;
}

} // namespace probeqfi
