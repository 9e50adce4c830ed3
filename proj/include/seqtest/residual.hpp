#pragma once

#include <cstdint>

#include "seqtest/loss.hpp"
#include "seqtest/value_surface.hpp"
#include "seqtest/volatility_curve.hpp"

namespace seqtest {

struct ResidualEstimate {
    double lower{0.0};     // RHS - LHS of the lower-boundary equation
    double upper{0.0};
    double se_lower{0.0};  // Monte Carlo standard errors of the two estimates
    double se_upper{0.0};
};

/**
 * Monte Carlo check of the coupled integral equations the two stopping
 * boundaries satisfy. For each boundary the posterior is started on the
 * boundary at t_start and run to the horizon under the mixture law; the
 * estimate is
 *   E[g(p_T)] + cost * E[time spent between the boundaries]
 *             - E[integral of eta^2 curvature(p) while outside]
 * minus g(starting point). The curvature term vanishes identically for the
 * classic loss and is skipped there. Both time integrals are Riemann sums on
 * the path grid; standard errors are per-path sample deviations.
 */
ResidualEstimate integral_residual(const BoundaryPair& bounds, const VolatilityCurve& eta,
                                   const LossModel& loss, double cost, double t_start,
                                   long n_paths, double dt, std::uint64_t seed);

} // namespace seqtest
