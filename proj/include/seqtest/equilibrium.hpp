#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "seqtest/config.hpp"
#include "seqtest/hitting.hpp"
#include "seqtest/measure.hpp"
#include "seqtest/value_surface.hpp"
#include "seqtest/volatility_curve.hpp"

namespace seqtest {

/**
 * One application of the response map: the measure pair induces a volatility
 * schedule, the single-agent problem is solved against it, and the resulting
 * boundary rule is pushed through the population simulator. The Monte Carlo
 * seed is part of the config, so the map is deterministic (common random
 * numbers across fixed-point iterations).
 */
struct ResponseOutput {
    StoppedMeasurePair measure;
    ValueSurface surface;
    BoundaryPair bounds;
    VolatilityCurve eta;
};

ResponseOutput apply_response(const StoppedMeasurePair& mu, const ProblemConfig& cfg);

struct EquilibriumResult {
    StoppedMeasurePair measure;          // converged iterate
    ValueSurface surface;                // agent solution induced by it
    BoundaryPair bounds;
    VolatilityCurve eta;
    bool converged{false};
    int iterations{0};
    std::vector<double> distances{};     // residual per damped update
    std::vector<double> boundary_steps{};  // sup boundary move per damped update
    double eta_min_observed{0.0};        // smallest unclamped volatility seen
};

/**
 * Damped fixed-point iteration mu <- (1-damping) mu + damping * response(mu).
 * Each iteration performs one damped update and then evaluates the response
 * at the new iterate; the recorded distance is the Kolmogorov gap between the
 * iterate and its response, and iteration stops once it falls to tol. With an
 * interaction-free signal (lambda1 = 0) the response map is constant, so the
 * first damped update already lands on the fixed point.
 */
EquilibriumResult solve_equilibrium(const ProblemConfig& cfg,
                                    std::optional<StoppedMeasurePair> init = std::nullopt);

} // namespace seqtest
