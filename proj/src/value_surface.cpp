#include "seqtest/value_surface.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

#include "seqtest/math_util.hpp"
#include "seqtest/tridiag.hpp"

namespace seqtest {

double BoundaryPair::lower_at(double t) const { return interp_linear(times, lower, t); }
double BoundaryPair::upper_at(double t) const { return interp_linear(times, upper, t); }

double ValueSurface::value_at(double t, double p) const {
    const auto locate = [](const std::vector<double>& xs, double x, std::size_t& lo, double& w) {
        if (x <= xs.front()) {
            lo = 0;
            w = 0.0;
            return;
        }
        if (x >= xs.back()) {
            lo = xs.size() - 2;
            w = 1.0;
            return;
        }
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        lo = static_cast<std::size_t>(it - xs.begin()) - 1;
        w = (x - xs[lo]) / (xs[lo + 1] - xs[lo]);
    };
    std::size_t kt, ki;
    double wt, wi;
    locate(times, t, kt, wt);
    locate(probs, p, ki, wi);
    const std::size_t n = probs.size();
    const double v00 = v[kt * n + ki], v01 = v[kt * n + ki + 1];
    const double v10 = v[(kt + 1) * n + ki], v11 = v[(kt + 1) * n + ki + 1];
    return (1.0 - wt) * ((1.0 - wi) * v00 + wi * v01) + wt * ((1.0 - wi) * v10 + wi * v11);
}

double default_stop_tol(const LossModel& loss) {
    return 1e-9 * std::max(1.0, loss.sup_norm());
}

ValueSurface solve_value(const VolatilityCurve& eta, const LossModel& loss, double cost,
                         int n_space, int n_time) {
    if (!(cost > 0.0)) throw std::invalid_argument("solve_value: cost must be positive");
    if (n_space < 2 || n_time < 1) {
        throw std::invalid_argument("solve_value: grid must have n_space >= 2, n_time >= 1");
    }
    if (n_space < 50) {
        std::cerr << "solve_value: warning: n_space = " << n_space
                  << " is very coarse; boundaries will be unreliable\n";
    }

    const double horizon = eta.horizon();
    ValueSurface s;
    s.times = uniform_nodes(0.0, horizon, n_time);
    s.probs = uniform_nodes(0.0, 1.0, n_space);
    s.center = loss.center();
    s.stop_tol = default_stop_tol(loss);

    const std::size_t np = s.probs.size();
    s.g.resize(np);
    for (std::size_t i = 0; i < np; ++i) s.g[i] = loss.value(s.probs[i]);

    s.v.assign(static_cast<std::size_t>(n_time + 1) * np, 0.0);
    s.stop.assign(s.v.size(), 0);

    // Terminal condition: stopping is forced, value equals the loss.
    std::copy(s.g.begin(), s.g.end(), s.v.begin() + static_cast<std::size_t>(n_time) * np);

    const double dt = horizon / n_time;
    const double h = 1.0 / n_space;
    const std::size_t m = np - 2;  // interior unknowns

    std::vector<double> sub(m), diag(m), super(m), rhs(m), coef(m);
    TridiagonalSolver thomas;

    for (int k = n_time - 1; k >= 0; --k) {
        const double e = eta(s.times[static_cast<std::size_t>(k)]);
        const double half_e2 = 0.5 * e * e;
        for (std::size_t i = 0; i < m; ++i) {
            const double p = s.probs[i + 1];
            const double q = p * (1.0 - p);
            coef[i] = half_e2 * q * q / (h * h);
        }
        const double* vnext = &s.v[static_cast<std::size_t>(k + 1) * np];
        for (std::size_t i = 0; i < m; ++i) {
            sub[i] = -dt * coef[i];
            super[i] = -dt * coef[i];
            diag[i] = 1.0 + 2.0 * dt * coef[i];
            rhs[i] = vnext[i + 1] + cost * dt;
        }
        thomas.solve(sub, diag, super, rhs);

        double* vk = &s.v[static_cast<std::size_t>(k) * np];
        vk[0] = 0.0;
        vk[np - 1] = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            // Projection onto the obstacle; the max guards against rounding
            // dust below zero, which the continuous problem excludes.
            double val = std::min(rhs[i], s.g[i + 1]);
            val = std::max(val, 0.0);
            if (!std::isfinite(val)) {
                throw std::runtime_error("solve_value: non-finite value at time level " +
                                         std::to_string(k));
            }
            vk[i + 1] = val;
        }
    }

    for (int k = 0; k <= n_time; ++k) {
        const double* vk = &s.v[static_cast<std::size_t>(k) * np];
        std::uint8_t* st = &s.stop[static_cast<std::size_t>(k) * np];
        for (std::size_t i = 0; i < np; ++i) {
            st[i] = (s.g[i] - vk[i] <= s.stop_tol) ? 1 : 0;
        }
    }
    return s;
}

BoundaryPair extract_boundaries(const ValueSurface& s) {
    BoundaryPair b;
    b.times = s.times;
    b.center = s.center;
    const std::size_t nt = s.times.size();
    const std::size_t np = s.probs.size();
    b.lower.assign(nt, s.center);
    b.upper.assign(nt, s.center);
    b.degenerate.assign(nt, 0);

    const double tol = s.stop_tol;
    for (std::size_t k = 0; k < nt; ++k) {
        const double* vk = &s.v[k * np];
        std::size_t lo = np, hi = 0;
        for (std::size_t i = 0; i < np; ++i) {
            if (s.g[i] - vk[i] > tol) {
                if (lo == np) lo = i;
                hi = i;
            }
        }
        if (lo == np) {
            b.degenerate[k] = 1;
            continue;
        }
        // lo >= 1 and hi <= np-2 because the endpoints satisfy v = g = 0.
        const double d_stop_lo = s.g[lo - 1] - vk[lo - 1];
        const double d_cont_lo = s.g[lo] - vk[lo];
        const double w_lo = (tol - d_stop_lo) / (d_cont_lo - d_stop_lo);
        b.lower[k] = s.probs[lo - 1] + w_lo * (s.probs[lo] - s.probs[lo - 1]);

        const double d_stop_hi = s.g[hi + 1] - vk[hi + 1];
        const double d_cont_hi = s.g[hi] - vk[hi];
        const double w_hi = (tol - d_stop_hi) / (d_cont_hi - d_stop_hi);
        b.upper[k] = s.probs[hi + 1] - w_hi * (s.probs[hi + 1] - s.probs[hi]);
    }
    return b;
}

} // namespace seqtest
