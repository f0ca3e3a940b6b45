// optimize.hpp — Fisher-information maximization over interaction time and pulse count

#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "probeqfi/errors.hpp"
#include "probeqfi/fisher.hpp"

namespace probeqfi {

struct OptimizationBudget {
    double t_min = 1e-3;       // search interval, units 1/omega_0
    double t_max = 50.0;
    int coarse_points = 2000;  // log-spaced scan density
    double refine_tol = 1e-8;  // relative time tolerance of the refinement
    int n_max = 64;            // largest pulse count in the joint sweep

    // When set, t_min/t_max are measured in environment correlation times:
    // the search interval for a bath with cutoff w_c is [t_min/w_c, t_max/w_c].
    // Weak-coupling sweeps need this bounded interrogation window; an
    // unconstrained time optimum runs to Gamma(t_opt) = O(1) no matter how
    // small the coupling, which buries the weak-coupling regime.
    bool window_in_correlation_time = false;

    void validate() const {
        if (!(t_min > 0.0 && t_min < t_max))
            throw std::invalid_argument("OptimizationBudget: need 0 < t_min < t_max");
        if (coarse_points < 10)
            throw std::invalid_argument("OptimizationBudget: coarse_points must be >= 10");
        if (!(refine_tol > 0.0))
            throw std::invalid_argument("OptimizationBudget: refine_tol must be > 0");
        if (n_max < 0)
            throw std::invalid_argument("OptimizationBudget: n_max must be >= 0");
    }

    OptimizationBudget resolved_for(const BathParams& bath) const {
        OptimizationBudget out = *this;
        if (window_in_correlation_time) {
            out.t_min = t_min / bath.omega_c;
            out.t_max = t_max / bath.omega_c;
            out.window_in_correlation_time = false;
        }
        return out;
    }
};

struct TimeOptimum {
    double t = 0.0;
    double value = 0.0;
    bool boundary = false;  // best coarse point sat at the interval edge
};

// Global coarse scan on a log-spaced grid followed by golden-section
// refinement of the best bracket. The objective can be multimodal under
// pulses, so the scan density, not the local search, carries the global
// guarantee. Deterministic for a fixed budget.
template <class F>
TimeOptimum optimize_over_time(F&& objective, const OptimizationBudget& budget) {
    budget.validate();
    const int count = budget.coarse_points;
    const double ratio = budget.t_max / budget.t_min;

    std::vector<double> ts(static_cast<std::size_t>(count));
    double best_v = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < count; ++i) {
        const double t = budget.t_min * std::pow(ratio, i / (count - 1.0));
        ts[static_cast<std::size_t>(i)] = t;
        const double v = objective(t);
        if (!std::isfinite(v))
            throw EvaluationError("optimize_over_time: objective returned a non-finite value");
        if (v > best_v) {
            best_v = v;
            best_i = i;
        }
    }
    if (!(best_v > 0.0))
        throw NoInformation("optimize_over_time: objective is zero over the whole interval");

    double lo = ts[static_cast<std::size_t>(std::max(0, best_i - 1))];
    double hi = ts[static_cast<std::size_t>(std::min(count - 1, best_i + 1))];
    double best_t = ts[static_cast<std::size_t>(best_i)];

    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = objective(c);
    double fd = objective(d);
    auto consider = [&](double t, double v) {
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    };
    consider(c, fc);
    consider(d, fd);
    for (int iter = 0; iter < 200 && (hi - lo) > budget.refine_tol * std::abs(hi); ++iter) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = objective(c);
            consider(c, fc);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = objective(d);
            consider(d, fd);
        }
    }

    TimeOptimum out;
    out.t = best_t;
    out.value = best_v;
    out.boundary = (best_i == 0 || best_i == count - 1);
    return out;
}

// Time-optimized QFI at a fixed pulse count.
inline FisherReport optimize_time(const BathParams& bath, const ProbeParams& probe,
                                  EstimationTarget target, const OptimizationBudget& budget,
                                  bool correlations_included = true, PulseSchedule pulses = {}) {
    const auto opt = optimize_over_time(
        [&](double t) { return qfi(bath, probe, t, pulses, target, correlations_included).value; },
        budget.resolved_for(bath));
    FisherReport rep = qfi(bath, probe, opt.t, pulses, target, correlations_included);
    rep.boundary = opt.boundary;
    return rep;
}

// Joint maximization over pulse count and interaction time. The n sweep is
// exhaustive up to n_max with an early stop after 8 consecutive counts that
// fail to improve the best value by 1e-6 relative.
inline FisherReport optimize_pulses(const BathParams& bath, const ProbeParams& probe,
                                    EstimationTarget target, const OptimizationBudget& budget,
                                    bool correlations_included = true) {
    budget.validate();
    const OptimizationBudget resolved = budget.resolved_for(bath);
    double best_v = -1.0;
    double best_t = resolved.t_min;
    int best_n = 0;
    bool best_boundary = false;
    int stale = 0;
    for (int n = 0; n <= resolved.n_max; ++n) {
        const PulseSchedule pulses{n};
        const auto opt = optimize_over_time(
            [&](double t) { return qfi(bath, probe, t, pulses, target, correlations_included).value; },
            resolved);
        const bool improved = best_v < 0.0 || opt.value > best_v * (1.0 + 1e-6);
        if (opt.value > best_v) {
            best_v = opt.value;
            best_t = opt.t;
            best_n = n;
            best_boundary = opt.boundary;
        }
        stale = improved ? 0 : stale + 1;
        if (stale >= 8) break;
    }
    FisherReport rep = qfi(bath, probe, best_t, PulseSchedule{best_n}, target, correlations_included);
    rep.boundary = best_boundary;
    return rep;
}

namespace detail {

// Index-parallel map; results land by index, so assembly order is
// deterministic regardless of scheduling. The body must not throw.
template <class Body>
void parallel_for_indexed(std::size_t count, Body&& body) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>(hw == 0 ? 1 : hw, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace detail

struct SweepEntry {
    std::optional<FisherReport> report;
    std::string error;  // nonempty when this row failed numerically
};

// Evaluates one optimized report per axis point. Rows are independent and run
// concurrently; per-row failures are recorded, not fatal.
template <class Fn>
std::vector<SweepEntry> sweep(const std::vector<BathParams>& axis, Fn&& evaluate) {
    if (axis.empty()) throw std::invalid_argument("sweep: axis must be nonempty");
    std::vector<SweepEntry> rows(axis.size());
    detail::parallel_for_indexed(axis.size(), [&](std::size_t i) {
        try {
            rows[i].report = evaluate(axis[i]);
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
    });
    return rows;
}

} // namespace probeqfi
