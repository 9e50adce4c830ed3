#pragma once

#include <cstdint>
#include <vector>

#include "seqtest/loss.hpp"
#include "seqtest/volatility_curve.hpp"

namespace seqtest {

/**
 * Stopping boundaries on a time grid. lower(t) < center < upper(t) frame the
 * continuation region; nodes where it is empty are flagged degenerate and
 * carry lower = upper = center.
 */
struct BoundaryPair {
    std::vector<double> times;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::uint8_t> degenerate;
    double center{0.5};

    double lower_at(double t) const;
    double upper_at(double t) const;
};

/**
 * Value function of the single-agent stopping problem on the [0,T] x [0,1]
 * grid, row-major by time level. stop marks nodes where the obstacle is
 * active (value equals the loss up to the stopping tolerance).
 */
class ValueSurface {
public:
    std::vector<double> times;   // n_time + 1 nodes
    std::vector<double> probs;   // n_space + 1 nodes
    std::vector<double> v;       // (n_time+1) x (n_space+1)
    std::vector<double> g;       // obstacle sampled on probs
    std::vector<std::uint8_t> stop;
    double center{0.5};
    double stop_tol{0.0};

    double value(int k, int i) const {
        return v[static_cast<std::size_t>(k) * probs.size() + static_cast<std::size_t>(i)];
    }
    bool stopped(int k, int i) const {
        return stop[static_cast<std::size_t>(k) * probs.size() + static_cast<std::size_t>(i)] != 0;
    }
    // Bilinear interpolation in (t, p).
    double value_at(double t, double p) const;
};

/**
 * Backward-in-time obstacle solver: implicit diffusion step (Thomas solve)
 * followed by pointwise projection onto the obstacle. Dirichlet zeros at both
 * ends, terminal condition equal to the loss. Emits a warning to stderr when
 * n_space < 50; throws on non-finite intermediate values.
 */
ValueSurface solve_value(const VolatilityCurve& eta, const LossModel& loss, double cost,
                         int n_space, int n_time);

// Stopping tolerance used when none is passed explicitly.
double default_stop_tol(const LossModel& loss);

/**
 * Extracts the two stopping boundaries per time level from the stop region of
 * a solved surface. The boundary location is refined by interpolating the gap
 * g - v between the last stopped node and the first continuation node on each
 * side of the center. The upper boundary is found independently of the lower
 * one; no symmetry is imposed.
 */
BoundaryPair extract_boundaries(const ValueSurface& surface);

} // namespace seqtest
