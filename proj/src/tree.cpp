#include "seqtest/tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "seqtest/math_util.hpp"

namespace seqtest {

double brute_force_tree_value(double eta, const LossModel& loss, double cost, double horizon,
                              int n_steps, double prior) {
    if (!(eta > 0.0)) throw std::invalid_argument("tree: eta must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("tree: horizon must be positive");
    if (!(cost >= 0.0)) throw std::invalid_argument("tree: cost must be nonnegative");
    if (n_steps < 1 || n_steps > 6) {
        throw std::invalid_argument("tree: n_steps must lie in [1, 6]; this is a toy oracle");
    }
    if (!(prior > 0.0) || !(prior < 1.0)) {
        throw std::invalid_argument("tree: prior must lie strictly inside (0,1)");
    }

    const double dt = horizon / n_steps;
    const double delta = eta * std::sqrt(dt);  // sqrt of the clock increment
    const double l0 = logit(prior);

    // Level k holds k+1 nodes, l = l0 + (2i - k) * delta.
    std::vector<double> value(static_cast<std::size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i) {
        const double l = l0 + (2.0 * i - n_steps) * delta;
        value[static_cast<std::size_t>(i)] = loss.value(sigmoid(l));
    }
    for (int k = n_steps - 1; k >= 0; --k) {
        for (int i = 0; i <= k; ++i) {
            const double l = l0 + (2.0 * i - k) * delta;
            const double p = sigmoid(l);
            const double pu = (p - sigmoid(l - delta)) / (sigmoid(l + delta) - sigmoid(l - delta));
            const double cont = cost * dt + pu * value[static_cast<std::size_t>(i) + 1] +
                                (1.0 - pu) * value[static_cast<std::size_t>(i)];
            value[static_cast<std::size_t>(i)] = std::min(loss.value(p), cont);
        }
    }
    return value[0];
}

} // namespace seqtest
