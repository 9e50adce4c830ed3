#include "seqtest/residual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "seqtest/math_util.hpp"
#include "seqtest/rng.hpp"

namespace seqtest {

namespace {

struct SideResult {
    double mean;
    double se;
};

SideResult run_side(const BoundaryPair& bounds, const VolatilityCurve& eta, const LossModel& loss,
                    double cost, double t_start, double start_p, long n_paths, double dt,
                    std::uint64_t seed, std::uint64_t stream) {
    const double horizon = eta.horizon();
    const int n_steps = static_cast<int>(std::llround((horizon - t_start) / dt));
    if (n_steps < 1) throw std::invalid_argument("integral_residual: t_start too close to horizon");
    const double step = (horizon - t_start) / n_steps;

    // Per-step tables shared by every path.
    std::vector<double> drift_half(n_steps), vol(n_steps);
    std::vector<double> blo(n_steps + 1), bup(n_steps + 1), eta2(n_steps + 1);
    double prev = eta.clock(t_start);
    for (int k = 0; k < n_steps; ++k) {
        const double next = eta.clock(t_start + (k + 1) * step);
        drift_half[k] = 0.5 * (next - prev);
        vol[k] = std::sqrt(next - prev);
        prev = next;
    }
    for (int k = 0; k <= n_steps; ++k) {
        const double t = t_start + k * step;
        blo[static_cast<std::size_t>(k)] = bounds.lower_at(t);
        bup[static_cast<std::size_t>(k)] = bounds.upper_at(t);
        const double e = eta(t);
        eta2[static_cast<std::size_t>(k)] = e * e;
    }

    const double l_start = logit(start_p);
    const bool smooth = loss.smooth();
    std::vector<double> per_path(static_cast<std::size_t>(n_paths));

#pragma omp parallel for schedule(static)
    for (long p = 0; p < n_paths; ++p) {
        CounterRng rng(seed, stream, static_cast<std::uint64_t>(p));
        const double sign = rng.bernoulli(start_p, 0) ? 1.0 : -1.0;
        double l = l_start;
        double acc = 0.0;
        for (int k = 0; k < n_steps; ++k) {
            const double pk = sigmoid(l);
            if (pk > blo[static_cast<std::size_t>(k)] && pk < bup[static_cast<std::size_t>(k)]) {
                acc += cost * step;
            } else if (smooth) {
                acc -= eta2[static_cast<std::size_t>(k)] * loss.curvature(pk) * step;
            }
            const double z = rng.normal(4 * static_cast<std::uint64_t>(k) + 4);
            l += sign * drift_half[k] + vol[k] * z;
        }
        acc += loss.value(sigmoid(l));
        per_path[static_cast<std::size_t>(p)] = acc;
    }

    // Reduction in path order keeps the result independent of thread count.
    double mean = 0.0;
    for (long p = 0; p < n_paths; ++p) mean += per_path[static_cast<std::size_t>(p)];
    mean /= static_cast<double>(n_paths);
    double var = 0.0;
    for (long p = 0; p < n_paths; ++p) {
        const double d = per_path[static_cast<std::size_t>(p)] - mean;
        var += d * d;
    }
    var /= std::max<double>(1.0, static_cast<double>(n_paths - 1));
    return {mean, std::sqrt(var / static_cast<double>(n_paths))};
}

} // namespace

ResidualEstimate integral_residual(const BoundaryPair& bounds, const VolatilityCurve& eta,
                                   const LossModel& loss, double cost, double t_start,
                                   long n_paths, double dt, std::uint64_t seed) {
    if (n_paths < 2) throw std::invalid_argument("integral_residual: need at least two paths");
    if (!(t_start >= 0.0) || !(t_start < eta.horizon())) {
        throw std::invalid_argument("integral_residual: t_start must lie in [0, T)");
    }

    const double lo = bounds.lower_at(t_start);
    const double hi = bounds.upper_at(t_start);

    const SideResult l = run_side(bounds, eta, loss, cost, t_start, lo, n_paths, dt, seed,
                                  rng_stream::kResidualLower);
    const SideResult u = run_side(bounds, eta, loss, cost, t_start, hi, n_paths, dt, seed,
                                  rng_stream::kResidualUpper);

    ResidualEstimate out;
    out.lower = l.mean - loss.value(lo);
    out.upper = u.mean - loss.value(hi);
    out.se_lower = l.se;
    out.se_upper = u.se;
    return out;
}

} // namespace seqtest
