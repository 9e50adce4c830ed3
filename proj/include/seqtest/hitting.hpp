#pragma once

#include <cstdint>
#include <vector>

#include "seqtest/config.hpp"
#include "seqtest/measure.hpp"
#include "seqtest/value_surface.hpp"
#include "seqtest/volatility_curve.hpp"

namespace seqtest {

/**
 * Stopping corridor in log-likelihood space: lower(t) = logit(b(t)),
 * upper(t) = logit(B(t)) on the boundary time grid. Degenerate slices carry
 * lower = upper.
 */
struct LogitBoundaries {
    std::vector<double> times;
    std::vector<double> lower;
    std::vector<double> upper;

    static LogitBoundaries from_probability(const BoundaryPair& bounds);

    double lower_at(double t) const;
    double upper_at(double t) const;
};

struct HittingCdf {
    std::vector<double> times;  // shared output grid
    std::vector<double> cdf;    // fraction of paths stopped by each node
    long n_paths{0};
    long exits_down{0};
    long exits_up{0};
    long capped{0};             // paths that reached the horizon inside

    double at(double t) const;
};

/**
 * First-passage law of the conditional log-likelihood walk through the
 * corridor, by Monte Carlo with exact Gaussian increments. Within each step
 * the boundary is linearized and a Brownian-bridge correction registers a
 * crossing that the endpoints missed with probability exp(-2 d1 d2 / dclock).
 * Direct crossings get linearly interpolated crossing times; bridge-detected
 * ones are charged to the middle of the step. Paths still inside at the
 * horizon are capped there, so the final CDF value is exactly 1. Parallel
 * over paths with counter RNG substreams; the empirical CDF is assembled from
 * integer counts, so results do not depend on the worker count.
 */
HittingCdf hitting_cdf_mc(const LogitBoundaries& bounds, const VolatilityCurve& eta, double l0,
                          int theta, long n_paths, double dt, std::uint64_t seed,
                          const std::vector<double>& out_times);

// Plain-loop reference implementation; bit-identical to the parallel kernel.
HittingCdf hitting_cdf_mc_serial(const LogitBoundaries& bounds, const VolatilityCurve& eta,
                                 double l0, int theta, long n_paths, double dt, std::uint64_t seed,
                                 const std::vector<double>& out_times);

/**
 * Same law via the absorbed forward equation: the conditional density evolves
 * under drift +/- eta^2/2 and diffusion eta^2/2 in boundary-fitted
 * coordinates (the corridor is mapped to a fixed unit band), killed at both
 * walls. CDF(t) is one minus the surviving mass. Throws when the corridor
 * motion is too fast for the monotone stencil at the given resolution.
 */
HittingCdf hitting_cdf_pde(const LogitBoundaries& bounds, const VolatilityCurve& eta, double l0,
                           int theta, int n_y, int n_steps, const std::vector<double>& out_times);

/**
 * Population response: the stopping-time CDFs of both sub-populations when
 * every agent applies the boundary rule from the surface, starting from the
 * common prior. Uses hitting_cdf_mc with hypothesis-specific substreams of
 * the given seed.
 */
StoppedMeasurePair response_measure(const BoundaryPair& bounds, const VolatilityCurve& eta,
                                    double prior, const McSpec& mc,
                                    const std::vector<double>& out_times);

} // namespace seqtest
