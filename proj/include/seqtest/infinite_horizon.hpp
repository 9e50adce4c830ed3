#pragma once

#include <vector>

#include "seqtest/loss.hpp"

namespace seqtest {

struct InfiniteHorizonSolution {
    bool interior{false};     // false: continuation region empty, value = loss
    double eta{0.0};
    double lower{0.5};        // stationary boundaries
    double upper{0.5};
    double fit_residual{0.0}; // |dV/dp| mismatch at the center after shooting
    std::vector<double> probs;
    std::vector<double> values;

    double value_at(double p) const;
};

/**
 * Stationary problem with constant volatility and a smooth symmetric loss.
 * On the continuation interval the value solves
 *   (eta^2 / 2) p^2 (1-p)^2 V'' = -cost
 * with value matching and smooth fit at both boundaries. Symmetry pins
 * upper = 1 - lower, so a single parameter is shot: the boundary is moved
 * until the closed-form integral of the ODE has zero slope at p = 1/2.
 * When the depth condition fails (observation too expensive for the signal)
 * there is no interior root and the solution degenerates to the loss itself.
 */
InfiniteHorizonSolution solve_infinite_horizon(double eta, const LossModel& loss, double cost,
                                               int n_space = 1000);

} // namespace seqtest
