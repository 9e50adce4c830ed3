#pragma once

#include <vector>

#include "seqtest/measure.hpp"
#include "seqtest/signal.hpp"

namespace seqtest {

/**
 * Deterministic effective-volatility schedule on [0, T], piecewise linear
 * between stored nodes and clamped below at kEtaFloor. Carries the induced
 * information clock
 *   clock(t) = integral of eta(s)^2 over [0, t],
 * computed by composite trapezoid on the stored grid, which is strictly
 * increasing because eta is positive.
 */
class VolatilityCurve {
public:
    VolatilityCurve(std::vector<double> times, std::vector<double> values);

    static VolatilityCurve constant(double eta, double horizon, int n_steps = 16);

    double operator()(double t) const;
    double horizon() const { return times_.back(); }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }

    double clock(double t) const;
    double total_clock() const { return alpha_.back(); }
    // Inverse clock by bisection, resolved to 1e-10 time units.
    double inverse_clock(double u) const;

    // Smallest stored value before clamping; lets callers compare the realized
    // floor against the documented envelope.
    double min_raw_value() const { return min_raw_; }

private:
    std::vector<double> times_, values_, alpha_;
    double min_raw_{0.0};
};

// Samples the measure-induced volatility on a uniform grid with n_steps steps.
VolatilityCurve induced_volatility(const SignalModel& sig, const StoppedMeasurePair& mu,
                                   const Mollifier& phi, double horizon, int n_steps);

struct ConditionalMoments {
    double mean;
    double variance;
};

// Moments of the log-likelihood ratio at time t given the hypothesis:
// mean = l0 +/- clock(t)/2, variance = clock(t).
ConditionalMoments conditional_moments(const VolatilityCurve& eta, double l0, int theta, double t);

} // namespace seqtest
