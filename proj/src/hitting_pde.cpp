#include "seqtest/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqtest/math_util.hpp"
#include "seqtest/tridiag.hpp"

namespace seqtest {

namespace {
constexpr double kTailSigmas = 8.0;  // warm-start clearance in standard deviations
}

HittingCdf hitting_cdf_pde(const LogitBoundaries& bounds, const VolatilityCurve& eta, double l0,
                           int theta, int n_y, int n_steps, const std::vector<double>& out_times) {
    if (theta != 0 && theta != 1) throw std::invalid_argument("hitting: hypothesis must be 0 or 1");
    if (n_y < 8 || n_steps < 2) throw std::invalid_argument("hitting pde: grid too small");

    const double horizon = eta.horizon();
    const double dt = horizon / n_steps;
    const double h = 1.0 / n_y;
    const double sign = theta == 1 ? 1.0 : -1.0;

    std::vector<double> times(static_cast<std::size_t>(n_steps) + 1);
    std::vector<double> mlo(times.size()), mup(times.size()), width(times.size()),
        alpha(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        times[k] = dt * static_cast<double>(k);
        mlo[k] = bounds.lower_at(times[k]);
        mup[k] = bounds.upper_at(times[k]);
        width[k] = mup[k] - mlo[k];
        alpha[k] = eta.clock(times[k]);
    }

    std::vector<double> cdf(times.size(), 0.0);

    if (l0 <= mlo[0] || l0 >= mup[0]) {
        std::fill(cdf.begin(), cdf.end(), 1.0);
    } else {
        // Warm start: evolve from an exact conditional Gaussian profile at the
        // latest early time where the walls are still many deviations away.
        std::size_t k0 = 0;
        for (std::size_t k = 1; k < times.size() && times[k] <= horizon / 5.0; ++k) {
            const double sd = std::sqrt(alpha[k]);
            const double mean = l0 + sign * 0.5 * alpha[k];
            const double clear = std::min(mean - mlo[k], mup[k] - mean);
            if (clear >= kTailSigmas * sd && sd / width[k] >= 5.0 * h) {
                k0 = k;
            } else if (k0 > 0) {
                break;
            }
        }

        std::vector<double> q(static_cast<std::size_t>(n_y) + 1, 0.0);
        if (k0 == 0) {
            // Discrete delta split across the two nearest nodes.
            const double y0 = (l0 - mlo[0]) / width[0];
            const double pos = y0 / h;
            std::size_t i = static_cast<std::size_t>(std::clamp<double>(
                std::floor(pos), 1.0, static_cast<double>(n_y - 2)));
            const double frac = std::clamp(pos - static_cast<double>(i), 0.0, 1.0);
            q[i] = (1.0 - frac) / h;
            q[i + 1] = frac / h;
        } else {
            const double sd = std::sqrt(alpha[k0]);
            const double mean = l0 + sign * 0.5 * alpha[k0];
            for (int i = 1; i < n_y; ++i) {
                const double l = mlo[k0] + (static_cast<double>(i) * h) * width[k0];
                const double z = (l - mean) / sd;
                q[static_cast<std::size_t>(i)] =
                    width[k0] * std::exp(-0.5 * z * z) / (sd * 2.5066282746310005024);
            }
        }

        const auto survival = [&]() {
            double s = 0.0;
            for (int i = 1; i < n_y; ++i) s += q[static_cast<std::size_t>(i)];
            return s * h;
        };
        for (std::size_t k = 0; k <= k0; ++k) cdf[k] = std::max(0.0, 1.0 - survival());

        const std::size_t m = static_cast<std::size_t>(n_y) - 1;
        std::vector<double> sub(m), diag(m), super(m), rhs(m), a(static_cast<std::size_t>(n_y) + 1);
        TridiagonalSolver thomas;

        for (std::size_t k = k0; k + 1 < times.size(); ++k) {
            if (width[k + 1] <= 1e-6) {
                // Corridor pinches shut: every surviving path is absorbed.
                for (std::size_t j = k + 1; j < times.size(); ++j) cdf[j] = 1.0;
                break;
            }
            const double wnew = width[k + 1];
            const double mdot = (mlo[k + 1] - mlo[k]) / dt;
            const double wdot = (width[k + 1] - width[k]) / dt;
            const double eta2 = (alpha[k + 1] - alpha[k]) / dt;  // step-average of eta^2
            const double nu = sign * 0.5 * eta2;
            const double dw = 0.5 * eta2 / (wnew * wnew * h * h);
            for (std::size_t i = 0; i <= static_cast<std::size_t>(n_y); ++i) {
                const double y = h * static_cast<double>(i);
                a[i] = (mdot + y * wdot - nu) / wnew;
            }
            double amax = 0.0;
            for (double v : a) amax = std::max(amax, std::abs(v));
            if (amax / (2.0 * h) > dw) {
                throw std::runtime_error(
                    "hitting pde: corridor moves too fast for a monotone stencil; refine the "
                    "space grid");
            }
            for (std::size_t i = 0; i < m; ++i) {
                diag[i] = 1.0 + 2.0 * dt * dw;
                super[i] = -dt * (dw + a[i + 2] / (2.0 * h));
                sub[i] = -dt * (dw - a[i] / (2.0 * h));
                rhs[i] = q[i + 1];
            }
            thomas.solve(sub, diag, super, rhs);
            for (std::size_t i = 0; i < m; ++i) q[i + 1] = std::max(rhs[i], 0.0);
            q[0] = 0.0;
            q[static_cast<std::size_t>(n_y)] = 0.0;
            cdf[k + 1] = std::clamp(1.0 - survival(), cdf[k], 1.0);
        }
    }

    HittingCdf out;
    out.times = out_times;
    out.cdf.resize(out_times.size());
    for (std::size_t i = 0; i < out_times.size(); ++i) {
        out.cdf[i] = std::clamp(interp_linear(times, cdf, out_times[i]), 0.0, 1.0);
    }
    for (std::size_t i = 1; i < out.cdf.size(); ++i) {
        out.cdf[i] = std::max(out.cdf[i], out.cdf[i - 1]);
    }
    if (!out.cdf.empty()) out.cdf.back() = 1.0;
    return out;
}

} // namespace seqtest
