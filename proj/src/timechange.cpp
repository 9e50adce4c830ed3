#include "seqtest/timechange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "seqtest/math_util.hpp"
#include "seqtest/tridiag.hpp"

namespace seqtest {

ValueSurface solve_value_timechanged(const VolatilityCurve& eta, const LossModel& loss, double cost,
                                     int n_space, int n_time, double l_max, int n_l) {
    if (!(cost > 0.0)) throw std::invalid_argument("timechange: cost must be positive");
    if (n_l < 4 || n_space < 2 || n_time < 1) {
        throw std::invalid_argument("timechange: grid too small");
    }

    const double total = eta.total_clock();
    const int n_u = n_time;
    const double du = total / n_u;
    const double hl = 2.0 * l_max / n_l;

    // Drift of the log-likelihood ratio under the unconditional law once time
    // runs on the information clock.
    const auto drift = [](double l) { return 0.5 * std::tanh(0.5 * l); };

    std::vector<double> lgrid = uniform_nodes(-l_max, l_max, n_l);
    std::vector<double> obstacle(lgrid.size());
    for (std::size_t i = 0; i < lgrid.size(); ++i) obstacle[i] = loss.value(sigmoid(lgrid[i]));

    // De-clocked times and the running-cost scale per u level.
    std::vector<double> cost_scale(static_cast<std::size_t>(n_u) + 1);
    for (int j = 0; j <= n_u; ++j) {
        const double t = eta.inverse_clock(std::min(du * j, total));
        const double e = eta(t);
        cost_scale[static_cast<std::size_t>(j)] = cost / (e * e);
    }

    const std::size_t nl = lgrid.size();
    const std::size_t m = nl - 2;
    std::vector<double> sub(m), diag(m), super(m), rhs(m);
    std::vector<double> vhat(obstacle);
    TridiagonalSolver thomas;

    // Stencil weights: implicit centered differences for 0.5*d_ll + a(l)*d_l.
    const double wdiff = 0.5 / (hl * hl);
    std::vector<double> wup(m), wdn(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double a = drift(lgrid[i + 1]);
        wup[i] = wdiff + 0.5 * a / hl;
        wdn[i] = wdiff - 0.5 * a / hl;
        if (wup[i] < 0.0 || wdn[i] < 0.0) {
            throw std::runtime_error("timechange: grid too coarse for monotone stencil");
        }
    }

    // Backward sweep in clock time with obstacle projection each step; the
    // mapped-back surface gets filled afterwards.
    std::vector<double> all(static_cast<std::size_t>(n_u + 1) * nl);
    std::copy(vhat.begin(), vhat.end(), all.begin() + static_cast<std::size_t>(n_u) * nl);

    for (int j = n_u - 1; j >= 0; --j) {
        const double cdu = cost_scale[static_cast<std::size_t>(j)] * du;
        for (std::size_t i = 0; i < m; ++i) {
            sub[i] = -du * wdn[i];
            super[i] = -du * wup[i];
            diag[i] = 1.0 + du * (wup[i] + wdn[i]);
            rhs[i] = vhat[i + 1] + cdu;
        }
        // Dirichlet data folded into the right-hand side.
        rhs[0] += du * wdn[0] * obstacle.front();
        rhs[m - 1] += du * wup[m - 1] * obstacle.back();
        thomas.solve(sub, diag, super, rhs);
        for (std::size_t i = 0; i < m; ++i) {
            double val = std::min(rhs[i], obstacle[i + 1]);
            val = std::max(val, 0.0);
            if (!std::isfinite(val)) {
                throw std::runtime_error("timechange: non-finite value at clock level " +
                                         std::to_string(j));
            }
            vhat[i + 1] = val;
        }
        std::copy(vhat.begin(), vhat.end(), all.begin() + static_cast<std::size_t>(j) * nl);
    }

    ValueSurface s;
    s.times = uniform_nodes(0.0, eta.horizon(), n_time);
    s.probs = uniform_nodes(0.0, 1.0, n_space);
    s.center = loss.center();
    s.stop_tol = default_stop_tol(loss);
    const std::size_t np = s.probs.size();
    s.g.resize(np);
    for (std::size_t i = 0; i < np; ++i) s.g[i] = loss.value(s.probs[i]);
    s.v.assign(static_cast<std::size_t>(n_time + 1) * np, 0.0);
    s.stop.assign(s.v.size(), 0);

    for (int k = 0; k <= n_time; ++k) {
        const double u = std::min(eta.clock(s.times[static_cast<std::size_t>(k)]), total);
        double ju = u / du;
        std::size_t j0 = static_cast<std::size_t>(std::min<double>(std::floor(ju),
                                                                   static_cast<double>(n_u - 1)));
        const double wu = std::clamp(ju - static_cast<double>(j0), 0.0, 1.0);
        const double* row0 = &all[j0 * nl];
        const double* row1 = &all[(j0 + 1) * nl];
        double* vk = &s.v[static_cast<std::size_t>(k) * np];
        for (std::size_t i = 1; i + 1 < np; ++i) {
            const double l = std::clamp(logit(s.probs[i]), -l_max, l_max);
            double li = (l + l_max) / hl;
            std::size_t i0 = static_cast<std::size_t>(
                std::min<double>(std::floor(li), static_cast<double>(n_l - 1)));
            const double wl = std::clamp(li - static_cast<double>(i0), 0.0, 1.0);
            const double a = (1.0 - wu) * row0[i0] + wu * row1[i0];
            const double b = (1.0 - wu) * row0[i0 + 1] + wu * row1[i0 + 1];
            vk[i] = (1.0 - wl) * a + wl * b;
        }
        vk[0] = 0.0;
        vk[np - 1] = 0.0;
        std::uint8_t* st = &s.stop[static_cast<std::size_t>(k) * np];
        for (std::size_t i = 0; i < np; ++i) st[i] = (s.g[i] - vk[i] <= s.stop_tol) ? 1 : 0;
    }
    return s;
}

} // namespace seqtest
