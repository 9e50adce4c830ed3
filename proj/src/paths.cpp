#include "seqtest/paths.hpp"

#include <cmath>
#include <stdexcept>

#include "seqtest/math_util.hpp"
#include "seqtest/rng.hpp"

namespace seqtest {

namespace {

struct StepTable {
    int n_steps;
    std::vector<double> drift_half;  // dclock/2 per step
    std::vector<double> vol;         // sqrt(dclock) per step
};

StepTable build_steps(const VolatilityCurve& eta, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("paths: dt must be positive");
    const double horizon = eta.horizon();
    const int n_steps = static_cast<int>(std::llround(horizon / dt));
    if (n_steps < 1 || std::abs(n_steps * dt - horizon) > 1e-9 * std::max(1.0, horizon)) {
        throw std::invalid_argument("paths: dt must divide the horizon");
    }
    StepTable tab;
    tab.n_steps = n_steps;
    tab.drift_half.resize(n_steps);
    tab.vol.resize(n_steps);
    double prev = 0.0;
    for (int k = 0; k < n_steps; ++k) {
        const double next = eta.clock((k + 1) * dt);
        const double da = next - prev;
        tab.drift_half[k] = 0.5 * da;
        tab.vol[k] = std::sqrt(da);
        prev = next;
    }
    return tab;
}

// Counter layout per path: counter 0 is the label draw, step k uses counters
// {4k+4, 4k+5} for the Gaussian increment (4k+6 stays reserved for bridge
// corrections in the first-passage kernels, which share this layout).
inline void walk(const CounterRng& rng, const StepTable& tab, double l0, double sign, double* row) {
    row[0] = l0;
    double l = l0;
    for (int k = 0; k < tab.n_steps; ++k) {
        const double z = rng.normal(4 * static_cast<std::uint64_t>(k) + 4);
        l += sign * tab.drift_half[k] + tab.vol[k] * z;
        row[k + 1] = l;
    }
}

} // namespace

PathEnsemble sample_conditional_paths(const VolatilityCurve& eta, double l0, int theta, double dt,
                                      long n_paths, std::uint64_t seed) {
    if (theta != 0 && theta != 1) throw std::invalid_argument("paths: hypothesis must be 0 or 1");
    if (n_paths < 1) throw std::invalid_argument("paths: need at least one path");
    const StepTable tab = build_steps(eta, dt);

    PathEnsemble ens;
    ens.dt = dt;
    ens.n_paths = n_paths;
    ens.n_steps = tab.n_steps;
    ens.seed = seed;
    ens.llr.resize(static_cast<std::size_t>(n_paths) * (tab.n_steps + 1));
    ens.labels.assign(static_cast<std::size_t>(n_paths), static_cast<std::uint8_t>(theta));
    const double sign = theta == 1 ? 1.0 : -1.0;

#pragma omp parallel for schedule(static)
    for (long p = 0; p < n_paths; ++p) {
        CounterRng rng(seed, rng_stream::kConditionalPaths, static_cast<std::uint64_t>(p));
        walk(rng, tab, l0, sign, &ens.llr[static_cast<std::size_t>(p) * (tab.n_steps + 1)]);
    }
    return ens;
}

PathEnsemble sample_conditional_paths_serial(const VolatilityCurve& eta, double l0, int theta,
                                             double dt, long n_paths, std::uint64_t seed) {
    if (theta != 0 && theta != 1) throw std::invalid_argument("paths: hypothesis must be 0 or 1");
    if (n_paths < 1) throw std::invalid_argument("paths: need at least one path");
    const StepTable tab = build_steps(eta, dt);

    PathEnsemble ens;
    ens.dt = dt;
    ens.n_paths = n_paths;
    ens.n_steps = tab.n_steps;
    ens.seed = seed;
    ens.llr.resize(static_cast<std::size_t>(n_paths) * (tab.n_steps + 1));
    ens.labels.assign(static_cast<std::size_t>(n_paths), static_cast<std::uint8_t>(theta));
    const double sign = theta == 1 ? 1.0 : -1.0;

    for (long p = 0; p < n_paths; ++p) {
        CounterRng rng(seed, rng_stream::kConditionalPaths, static_cast<std::uint64_t>(p));
        double* row = &ens.llr[static_cast<std::size_t>(p) * (tab.n_steps + 1)];
        row[0] = l0;
        double l = l0;
        for (int k = 0; k < tab.n_steps; ++k) {
            const double z = rng.normal(4 * static_cast<std::uint64_t>(k) + 4);
            l += sign * tab.drift_half[k] + tab.vol[k] * z;
            row[k + 1] = l;
        }
    }
    return ens;
}

PathEnsemble sample_unconditional_paths(const VolatilityCurve& eta, double prior, double dt,
                                        long n_paths, std::uint64_t seed) {
    if (!(prior > 0.0) || !(prior < 1.0)) {
        throw std::invalid_argument("paths: prior must lie strictly inside (0,1)");
    }
    if (n_paths < 1) throw std::invalid_argument("paths: need at least one path");
    const StepTable tab = build_steps(eta, dt);
    const double l0 = logit(prior);

    PathEnsemble ens;
    ens.dt = dt;
    ens.n_paths = n_paths;
    ens.n_steps = tab.n_steps;
    ens.seed = seed;
    ens.llr.resize(static_cast<std::size_t>(n_paths) * (tab.n_steps + 1));
    ens.labels.resize(static_cast<std::size_t>(n_paths));

#pragma omp parallel for schedule(static)
    for (long p = 0; p < n_paths; ++p) {
        CounterRng rng(seed, rng_stream::kUnconditionalPaths, static_cast<std::uint64_t>(p));
        const bool one = rng.bernoulli(prior, 0);
        ens.labels[static_cast<std::size_t>(p)] = one ? 1 : 0;
        walk(rng, tab, l0, one ? 1.0 : -1.0,
             &ens.llr[static_cast<std::size_t>(p) * (tab.n_steps + 1)]);
    }
    return ens;
}

PathEnsemble sample_unconditional_paths_serial(const VolatilityCurve& eta, double prior, double dt,
                                               long n_paths, std::uint64_t seed) {
    if (!(prior > 0.0) || !(prior < 1.0)) {
        throw std::invalid_argument("paths: prior must lie strictly inside (0,1)");
    }
    if (n_paths < 1) throw std::invalid_argument("paths: need at least one path");
    const StepTable tab = build_steps(eta, dt);
    const double l0 = logit(prior);

    PathEnsemble ens;
    ens.dt = dt;
    ens.n_paths = n_paths;
    ens.n_steps = tab.n_steps;
    ens.seed = seed;
    ens.llr.resize(static_cast<std::size_t>(n_paths) * (tab.n_steps + 1));
    ens.labels.resize(static_cast<std::size_t>(n_paths));

    for (long p = 0; p < n_paths; ++p) {
        CounterRng rng(seed, rng_stream::kUnconditionalPaths, static_cast<std::uint64_t>(p));
        const bool one = rng.bernoulli(prior, 0);
        ens.labels[static_cast<std::size_t>(p)] = one ? 1 : 0;
        double* row = &ens.llr[static_cast<std::size_t>(p) * (tab.n_steps + 1)];
        row[0] = l0;
        double l = l0;
        for (int k = 0; k < tab.n_steps; ++k) {
            const double z = rng.normal(4 * static_cast<std::uint64_t>(k) + 4);
            l += (one ? 1.0 : -1.0) * tab.drift_half[k] + tab.vol[k] * z;
            row[k + 1] = l;
        }
    }
    return ens;
}

} // namespace seqtest
