#include "seqtest/infinite_horizon.hpp"

#include <cmath>
#include <stdexcept>

#include "seqtest/math_util.hpp"

namespace seqtest {

namespace {

// psi is the antiderivative of 1 / (p^2 (1-p)^2) with psi(1/2) = 0, and
// psi_anti is in turn the antiderivative of psi with psi_anti(1/2) = 0.
double psi(double p) {
    return -1.0 / p + 1.0 / (1.0 - p) + 2.0 * std::log(p / (1.0 - p));
}

double psi_anti(double p) {
    return -std::log(p * (1.0 - p)) + 2.0 * (p * std::log(p) + (1.0 - p) * std::log(1.0 - p));
}

} // namespace

double InfiniteHorizonSolution::value_at(double p) const {
    return interp_linear(probs, values, p);
}

InfiniteHorizonSolution solve_infinite_horizon(double eta, const LossModel& loss, double cost,
                                               int n_space) {
    if (!(eta > 0.0)) throw std::invalid_argument("infinite horizon: eta must be positive");
    if (!(cost > 0.0)) throw std::invalid_argument("infinite horizon: cost must be positive");
    if (!loss.smooth()) {
        throw std::invalid_argument("infinite horizon: smooth loss required");
    }

    InfiniteHorizonSolution sol;
    sol.eta = eta;
    sol.probs = uniform_nodes(0.0, 1.0, n_space);
    sol.values.resize(sol.probs.size());

    const double k = 2.0 * cost / (eta * eta);

    // Slope of the shot solution at the center as a function of the lower
    // boundary; a root strictly inside (0, 1/2) exists exactly when the
    // depth condition curvature(1/2) < -cost/eta^2 holds.
    const auto slope_at_center = [&](double b) { return loss.derivative(b) + k * psi(b); };

    const bool depth_ok = loss.curvature(0.5) < -cost / (eta * eta);
    if (!depth_ok) {
        sol.interior = false;
        for (std::size_t i = 0; i < sol.probs.size(); ++i) {
            sol.values[i] = loss.value(sol.probs[i]);
        }
        return sol;
    }

    double hi = 0.5 - 1e-9;
    double lo = hi;
    double step = 0.05;
    while (lo > 1e-13 && slope_at_center(lo) > 0.0) {
        lo = std::max(lo - step, 1e-13);
        step *= 1.6;
    }
    if (slope_at_center(lo) > 0.0) {
        // No sign change found: treat as no interior solution.
        sol.interior = false;
        for (std::size_t i = 0; i < sol.probs.size(); ++i) {
            sol.values[i] = loss.value(sol.probs[i]);
        }
        return sol;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (slope_at_center(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double b = 0.5 * (lo + hi);

    sol.interior = true;
    sol.lower = b;
    sol.upper = 1.0 - b;
    sol.fit_residual = std::abs(slope_at_center(b));

    // In the continuation band V'' = -k / (p^2 (1-p)^2), so with value match
    // and smooth fit at b:
    //   V(p) = g(b) + (g'(b) + k psi(b)) (p - b) - k (Psi(p) - Psi(b)),
    // and the linear coefficient vanishes at the fitted root.
    const double gb = loss.value(b);
    const double c1 = loss.derivative(b) + k * psi(b);
    const double psib = psi_anti(b);
    for (std::size_t i = 0; i < sol.probs.size(); ++i) {
        const double p = sol.probs[i];
        const double q = std::min(p, 1.0 - p);  // symmetric reduction to [0, 1/2]
        if (q <= b) {
            sol.values[i] = loss.value(p);
        } else {
            sol.values[i] = gb + c1 * (q - b) - k * (psi_anti(q) - psib);
        }
    }
    return sol;
}

} // namespace seqtest
