#include "seqtest/equilibrium.hpp"

#include <algorithm>
#include <cmath>

namespace seqtest {

namespace {

double boundary_gap(const BoundaryPair& a, const BoundaryPair& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.lower.size(); ++i) {
        d = std::max(d, std::abs(a.lower[i] - b.lower[i]));
        d = std::max(d, std::abs(a.upper[i] - b.upper[i]));
    }
    return d;
}

} // namespace

ResponseOutput apply_response(const StoppedMeasurePair& mu, const ProblemConfig& cfg) {
    const Mollifier phi(cfg.mollifier_width);
    VolatilityCurve eta = induced_volatility(cfg.signal, mu, phi, cfg.horizon, cfg.grid.n_time);
    ValueSurface surface = solve_value(eta, cfg.loss, cfg.cost, cfg.grid.n_space, cfg.grid.n_time);
    BoundaryPair bounds = extract_boundaries(surface);
    StoppedMeasurePair out = response_measure(bounds, eta, cfg.prior, cfg.mc, surface.times);
    return {std::move(out), std::move(surface), std::move(bounds), std::move(eta)};
}

EquilibriumResult solve_equilibrium(const ProblemConfig& cfg,
                                    std::optional<StoppedMeasurePair> init) {
    cfg.validate();
    StoppedMeasurePair mu =
        init.value_or(StoppedMeasurePair::uniform(cfg.horizon, cfg.grid.n_time));
    if (mu.times().size() != static_cast<std::size_t>(cfg.grid.n_time) + 1 ||
        std::abs(mu.horizon() - cfg.horizon) > 1e-12 * std::max(1.0, cfg.horizon)) {
        throw std::invalid_argument("equilibrium: initial measure grid does not match the config");
    }

    ResponseOutput resp = apply_response(mu, cfg);
    double eta_min = resp.eta.min_raw_value();

    EquilibriumResult res{mu, resp.surface, resp.bounds, resp.eta};

    for (int k = 1; k <= cfg.fixed_point.max_iter; ++k) {
        mu = mu.blend(resp.measure, cfg.fixed_point.damping);
        const BoundaryPair prev_bounds = resp.bounds;
        resp = apply_response(mu, cfg);
        eta_min = std::min(eta_min, resp.eta.min_raw_value());

        res.iterations = k;
        res.distances.push_back(kolmogorov_distance(mu, resp.measure));
        res.boundary_steps.push_back(boundary_gap(prev_bounds, resp.bounds));
        if (res.distances.back() <= cfg.fixed_point.tol) {
            res.converged = true;
            break;
        }
    }

    res.measure = mu;
    res.surface = resp.surface;
    res.bounds = resp.bounds;
    res.eta = resp.eta;
    res.eta_min_observed = eta_min;
    return res;
}

} // namespace seqtest
