#include "seqtest/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqtest/math_util.hpp"
#include "seqtest/rng.hpp"

namespace seqtest {

LogitBoundaries LogitBoundaries::from_probability(const BoundaryPair& bounds) {
    LogitBoundaries lb;
    lb.times = bounds.times;
    lb.lower.resize(bounds.lower.size());
    lb.upper.resize(bounds.upper.size());
    for (std::size_t i = 0; i < bounds.lower.size(); ++i) {
        lb.lower[i] = logit(bounds.lower[i]);
        lb.upper[i] = logit(bounds.upper[i]);
    }
    return lb;
}

double LogitBoundaries::lower_at(double t) const { return interp_linear(times, lower, t); }
double LogitBoundaries::upper_at(double t) const { return interp_linear(times, upper, t); }

double HittingCdf::at(double t) const { return interp_linear(times, cdf, t); }

namespace {

struct StepTables {
    int n_steps;
    double dt;
    std::vector<double> drift_half, vol, dclock;
    std::vector<double> lo, up;  // boundaries at step endpoints 0..n_steps
};

StepTables build_tables(const LogitBoundaries& bounds, const VolatilityCurve& eta, int theta,
                        double dt) {
    if (theta != 0 && theta != 1) throw std::invalid_argument("hitting: hypothesis must be 0 or 1");
    const double horizon = eta.horizon();
    const int n_steps = static_cast<int>(std::llround(horizon / dt));
    if (n_steps < 1 || std::abs(n_steps * dt - horizon) > 1e-9 * std::max(1.0, horizon)) {
        throw std::invalid_argument("hitting: dt must divide the horizon");
    }
    StepTables tab;
    tab.n_steps = n_steps;
    tab.dt = horizon / n_steps;
    tab.drift_half.resize(n_steps);
    tab.vol.resize(n_steps);
    tab.dclock.resize(n_steps);
    tab.lo.resize(n_steps + 1);
    tab.up.resize(n_steps + 1);
    const double sign = theta == 1 ? 1.0 : -1.0;
    double prev = 0.0;
    for (int k = 0; k < n_steps; ++k) {
        const double next = eta.clock((k + 1) * tab.dt);
        const double da = next - prev;
        tab.dclock[k] = da;
        tab.drift_half[k] = sign * 0.5 * da;
        tab.vol[k] = std::sqrt(da);
        prev = next;
    }
    for (int k = 0; k <= n_steps; ++k) {
        const double t = k * tab.dt;
        tab.lo[static_cast<std::size_t>(k)] = bounds.lower_at(t);
        tab.up[static_cast<std::size_t>(k)] = bounds.upper_at(t);
    }
    return tab;
}

struct PathOutcome {
    double tau;
    int side;  // 0 down, 1 up, 2 capped at the horizon
};

// One path's first passage through the corridor. Counter layout per step k:
// {4k+4, 4k+5} Gaussian increment, {4k+6} bridge uniform (only consulted when
// the crossing probability is above rounding, which is a per-path decision
// and therefore thread-safe).
inline PathOutcome simulate_path(const CounterRng& rng, const StepTables& tab, double l0) {
    double l = l0;
    if (l <= tab.lo[0]) return {0.0, 0};
    if (l >= tab.up[0]) return {0.0, 1};
    for (int k = 0; k < tab.n_steps; ++k) {
        const std::uint64_t base = 4 * static_cast<std::uint64_t>(k) + 4;
        const double z = rng.normal(base);
        const double lnew = l + tab.drift_half[k] + tab.vol[k] * z;
        const double t0 = k * tab.dt;
        const double dlo0 = l - tab.lo[static_cast<std::size_t>(k)];
        const double dlo1 = lnew - tab.lo[static_cast<std::size_t>(k) + 1];
        const double dup0 = tab.up[static_cast<std::size_t>(k)] - l;
        const double dup1 = tab.up[static_cast<std::size_t>(k) + 1] - lnew;
        if (dlo1 <= 0.0) {
            const double f = dlo0 / (dlo0 - dlo1);  // linearized wall, linearized path
            return {std::min(t0 + f * tab.dt, tab.n_steps * tab.dt), 0};
        }
        if (dup1 <= 0.0) {
            const double f = dup0 / (dup0 - dup1);
            return {std::min(t0 + f * tab.dt, tab.n_steps * tab.dt), 1};
        }
        // Both endpoints inside: Brownian-bridge probability of an unseen
        // excursion through either linearized wall.
        const double da = tab.dclock[k];
        const double xlo = 2.0 * dlo0 * dlo1;
        const double xup = 2.0 * dup0 * dup1;
        if (xlo < 40.0 * da || xup < 40.0 * da) {
            const double plo = std::exp(-xlo / da);
            const double pup = std::exp(-xup / da);
            const double u = rng.uniform(base + 2);
            if (u < plo) return {t0 + 0.5 * tab.dt, 0};
            if (u < plo + pup) return {t0 + 0.5 * tab.dt, 1};
        }
        l = lnew;
    }
    return {tab.n_steps * tab.dt, 2};
}

HittingCdf assemble(const std::vector<double>& taus, const std::vector<std::uint8_t>& sides,
                    const std::vector<double>& out_times) {
    HittingCdf out;
    out.times = out_times;
    out.n_paths = static_cast<long>(taus.size());
    std::vector<double> sorted(taus);
    std::sort(sorted.begin(), sorted.end());
    out.cdf.resize(out_times.size());
    for (std::size_t i = 0; i < out_times.size(); ++i) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), out_times[i]);
        out.cdf[i] = static_cast<double>(it - sorted.begin()) / static_cast<double>(taus.size());
    }
    if (!out.cdf.empty()) out.cdf.back() = 1.0;
    for (std::uint8_t s : sides) {
        if (s == 0) ++out.exits_down;
        else if (s == 1) ++out.exits_up;
        else ++out.capped;
    }
    return out;
}

} // namespace

HittingCdf hitting_cdf_mc(const LogitBoundaries& bounds, const VolatilityCurve& eta, double l0,
                          int theta, long n_paths, double dt, std::uint64_t seed,
                          const std::vector<double>& out_times) {
    if (n_paths < 1) throw std::invalid_argument("hitting: need at least one path");
    const StepTables tab = build_tables(bounds, eta, theta, dt);
    const std::uint64_t stream =
        theta == 1 ? rng_stream::kHittingTheta1 : rng_stream::kHittingTheta0;

    std::vector<double> taus(static_cast<std::size_t>(n_paths));
    std::vector<std::uint8_t> sides(static_cast<std::size_t>(n_paths));

#pragma omp parallel for schedule(static)
    for (long p = 0; p < n_paths; ++p) {
        CounterRng rng(seed, stream, static_cast<std::uint64_t>(p));
        const PathOutcome o = simulate_path(rng, tab, l0);
        taus[static_cast<std::size_t>(p)] = o.tau;
        sides[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(o.side);
    }
    return assemble(taus, sides, out_times);
}

HittingCdf hitting_cdf_mc_serial(const LogitBoundaries& bounds, const VolatilityCurve& eta,
                                 double l0, int theta, long n_paths, double dt, std::uint64_t seed,
                                 const std::vector<double>& out_times) {
    if (n_paths < 1) throw std::invalid_argument("hitting: need at least one path");
    const StepTables tab = build_tables(bounds, eta, theta, dt);
    const std::uint64_t stream =
        theta == 1 ? rng_stream::kHittingTheta1 : rng_stream::kHittingTheta0;

    std::vector<double> taus(static_cast<std::size_t>(n_paths));
    std::vector<std::uint8_t> sides(static_cast<std::size_t>(n_paths));
    for (long p = 0; p < n_paths; ++p) {
        CounterRng rng(seed, stream, static_cast<std::uint64_t>(p));
        double l = l0;
        double tau = tab.n_steps * tab.dt;
        int side = 2;
        if (l <= tab.lo[0]) {
            tau = 0.0;
            side = 0;
        } else if (l >= tab.up[0]) {
            tau = 0.0;
            side = 1;
        } else {
            for (int k = 0; k < tab.n_steps; ++k) {
                const std::uint64_t base = 4 * static_cast<std::uint64_t>(k) + 4;
                const double z = rng.normal(base);
                const double lnew = l + tab.drift_half[k] + tab.vol[k] * z;
                const double t0 = k * tab.dt;
                const double dlo0 = l - tab.lo[static_cast<std::size_t>(k)];
                const double dlo1 = lnew - tab.lo[static_cast<std::size_t>(k) + 1];
                const double dup0 = tab.up[static_cast<std::size_t>(k)] - l;
                const double dup1 = tab.up[static_cast<std::size_t>(k) + 1] - lnew;
                if (dlo1 <= 0.0) {
                    tau = std::min(t0 + dlo0 / (dlo0 - dlo1) * tab.dt, tab.n_steps * tab.dt);
                    side = 0;
                    break;
                }
                if (dup1 <= 0.0) {
                    tau = std::min(t0 + dup0 / (dup0 - dup1) * tab.dt, tab.n_steps * tab.dt);
                    side = 1;
                    break;
                }
                const double da = tab.dclock[k];
                const double xlo = 2.0 * dlo0 * dlo1;
                const double xup = 2.0 * dup0 * dup1;
                if (xlo < 40.0 * da || xup < 40.0 * da) {
                    const double plo = std::exp(-xlo / da);
                    const double pup = std::exp(-xup / da);
                    const double u = rng.uniform(base + 2);
                    if (u < plo) {
                        tau = t0 + 0.5 * tab.dt;
                        side = 0;
                        break;
                    }
                    if (u < plo + pup) {
                        tau = t0 + 0.5 * tab.dt;
                        side = 1;
                        break;
                    }
                }
                l = lnew;
            }
        }
        taus[static_cast<std::size_t>(p)] = tau;
        sides[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(side);
    }
    return assemble(taus, sides, out_times);
}

StoppedMeasurePair response_measure(const BoundaryPair& bounds, const VolatilityCurve& eta,
                                    double prior, const McSpec& mc,
                                    const std::vector<double>& out_times) {
    const LogitBoundaries lb = LogitBoundaries::from_probability(bounds);
    const double l0 = logit(prior);
    const HittingCdf f0 = hitting_cdf_mc(lb, eta, l0, 0, mc.paths, mc.dt, mc.seed, out_times);
    const HittingCdf f1 = hitting_cdf_mc(lb, eta, l0, 1, mc.paths, mc.dt, mc.seed, out_times);
    return StoppedMeasurePair(out_times, f0.cdf, f1.cdf);
}

} // namespace seqtest
