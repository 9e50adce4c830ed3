#pragma once

#include <cstddef>
#include <vector>

namespace seqtest {

/**
 * Pair of sub-population stopping-time CDFs (one per hypothesis) sampled on a
 * shared uniform time grid over [0, T]. Construction sanitizes the inputs:
 * values are clamped to [0,1], made nondecreasing by a running maximum, and
 * the terminal value is forced to 1 because stopping at the horizon is
 * mandatory.
 */
class StoppedMeasurePair {
public:
    StoppedMeasurePair(std::vector<double> times, std::vector<double> f0, std::vector<double> f1);

    static StoppedMeasurePair uniform(double horizon, int n_steps);
    static StoppedMeasurePair point_mass_at_zero(double horizon, int n_steps);
    static StoppedMeasurePair point_mass_at_horizon(double horizon, int n_steps);

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& f0() const { return f0_; }
    const std::vector<double>& f1() const { return f1_; }
    double horizon() const { return times_.back(); }
    std::size_t size() const { return times_.size(); }

    // Piecewise-linear CDF of hypothesis j; 0 before time zero, 1 after T.
    double cdf(int j, double t) const;

    // Convex combination (1-w) * this + w * other on a common grid.
    StoppedMeasurePair blend(const StoppedMeasurePair& other, double w) const;

private:
    std::vector<double> times_, f0_, f1_;
};

// Largest absolute difference between the two pairs over both hypotheses.
// Requires identical time grids.
double kolmogorov_distance(const StoppedMeasurePair& a, const StoppedMeasurePair& b);

} // namespace seqtest
