#pragma once

#include <cstdint>
#include <vector>

#include "seqtest/volatility_curve.hpp"

namespace seqtest {

/**
 * Ensemble of log-likelihood-ratio paths on a uniform step grid. Row p holds
 * path p at times 0, dt, ..., n_steps*dt. labels[p] is the hypothesis the path
 * was generated under.
 */
struct PathEnsemble {
    double dt{0.0};
    long n_paths{0};
    int n_steps{0};
    std::uint64_t seed{0};
    std::vector<double> llr;            // (n_paths x (n_steps+1)), row major
    std::vector<std::uint8_t> labels;

    double at(long path, int step) const {
        return llr[static_cast<std::size_t>(path) * (n_steps + 1) + step];
    }
};

// Exact-increment sampling of the conditionally Gaussian log-likelihood walk:
// per step the increment is +/- dclock/2 + sqrt(dclock) * z with dclock read
// off the curve's information clock. Parallel over paths; the per-path
// counter RNG makes the output independent of the worker count.
PathEnsemble sample_conditional_paths(const VolatilityCurve& eta, double l0, int theta, double dt,
                                      long n_paths, std::uint64_t seed);

// Plain-loop reference implementation kept for testing; bit-identical to the
// parallel kernel.
PathEnsemble sample_conditional_paths_serial(const VolatilityCurve& eta, double l0, int theta,
                                             double dt, long n_paths, std::uint64_t seed);

// Mixture sampling: each path first draws its hypothesis from the prior, then
// follows the conditional dynamics started at logit(prior).
PathEnsemble sample_unconditional_paths(const VolatilityCurve& eta, double prior, double dt,
                                        long n_paths, std::uint64_t seed);

PathEnsemble sample_unconditional_paths_serial(const VolatilityCurve& eta, double prior, double dt,
                                               long n_paths, std::uint64_t seed);

} // namespace seqtest
