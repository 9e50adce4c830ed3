#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "seqtest/infinite_horizon.hpp"
#include "seqtest/math_util.hpp"
#include "seqtest/residual.hpp"
#include "seqtest/timechange.hpp"
#include "seqtest/tree.hpp"
#include "seqtest/value_surface.hpp"

using namespace seqtest;

namespace {

VolatilityCurve falling_curve(double hi, double lo, double horizon, int n = 200) {
    std::vector<double> ts(n + 1), vs(n + 1);
    for (int i = 0; i <= n; ++i) {
        ts[i] = horizon * i / n;
        vs[i] = hi + (lo - hi) * ts[i] / horizon;
    }
    return VolatilityCurve(ts, vs);
}

// Continuation indices of one time slice, used for pocket checks.
std::vector<int> continuation_set(const ValueSurface& s, int k) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(s.probs.size()); ++i) {
        if (!s.stopped(k, i)) out.push_back(i);
    }
    return out;
}

} // namespace

TEST_CASE("obstacle solve satisfies the structural invariants") {
    const auto eta = VolatilityCurve::constant(1.0, 1.0);
    const LossModel g = LossModel::cross_entropy();
    const ValueSurface s = solve_value(eta, g, 0.1, 200, 200);
    const int nt = static_cast<int>(s.times.size()) - 1;
    const int np = static_cast<int>(s.probs.size()) - 1;

    for (int k = 0; k <= nt; ++k) {
        CHECK(s.value(k, 0) == 0.0);
        CHECK(s.value(k, np) == 0.0);
        for (int i = 0; i <= np; ++i) {
            const double v = s.value(k, i);
            REQUIRE(v >= 0.0);
            REQUIRE(v <= s.g[static_cast<std::size_t>(i)]);
        }
    }
    for (int i = 0; i <= np; ++i) CHECK(s.value(nt, i) == s.g[static_cast<std::size_t>(i)]);

    // Discrete concavity in the space direction.
    for (int k = 0; k <= nt; ++k) {
        for (int i = 1; i < np; ++i) {
            CHECK(s.value(k, i - 1) + s.value(k, i + 1) - 2.0 * s.value(k, i) <= 1e-8);
        }
    }

    // No interior pockets: continuation indices form one interval.
    for (int k = 0; k < nt; ++k) {
        const auto cont = continuation_set(s, k);
        REQUIRE(!cont.empty());
        CHECK(cont.back() - cont.front() + 1 == static_cast<int>(cont.size()));
        CHECK(cont.front() > 0);
        CHECK(cont.back() < np);
    }
}

TEST_CASE("prohibitive observation cost collapses the value onto the loss") {
    const auto eta = VolatilityCurve::constant(1.0, 1.0);
    const ValueSurface s = solve_value(eta, LossModel::cross_entropy(), 1000.0, 120, 120);
    double worst = 0.0;
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        for (std::size_t i = 0; i < s.probs.size(); ++i) {
            worst = std::max(worst, std::abs(s.value(static_cast<int>(k), static_cast<int>(i)) -
                                             s.g[i]));
        }
    }
    CHECK(worst <= 1e-12);

    const BoundaryPair bounds = extract_boundaries(s);
    for (std::size_t k = 0; k < bounds.times.size(); ++k) {
        CHECK(bounds.degenerate[k] == 1);
        CHECK(bounds.lower[k] == bounds.upper[k]);
    }
}

TEST_CASE("higher volatility lowers the value everywhere") {
    const LossModel g = LossModel::cross_entropy();
    const ValueSurface hi = solve_value(VolatilityCurve::constant(1.0, 2.0), g, 0.1, 150, 150);
    const ValueSurface lo = solve_value(VolatilityCurve::constant(0.5, 2.0), g, 0.1, 150, 150);
    for (std::size_t k = 0; k < hi.times.size(); ++k) {
        for (std::size_t i = 0; i < hi.probs.size(); ++i) {
            CHECK(hi.value(static_cast<int>(k), static_cast<int>(i)) <=
                  lo.value(static_cast<int>(k), static_cast<int>(i)) + 1e-8);
        }
    }
}

TEST_CASE("boundary extraction: symmetry, interpolated refinement, terminal degeneracy") {
    const auto eta = VolatilityCurve::constant(1.0, 5.0);
    const ValueSurface s = solve_value(eta, LossModel::cross_entropy(), 0.1, 400, 400);
    const BoundaryPair b = extract_boundaries(s);
    const double cell = 1.0 / 400.0;

    REQUIRE(b.times.size() == s.times.size());
    CHECK(b.degenerate.back() == 1);  // V(T,.) = g leaves no continuation slice
    for (std::size_t k = 0; k + 1 < b.times.size(); ++k) {
        REQUIRE(b.degenerate[k] == 0);
        CHECK(b.lower[k] < 0.5);
        CHECK(b.upper[k] > 0.5);
        // The solved surface is symmetric, so the two independently located
        // boundaries must mirror each other.
        CHECK(std::abs(b.lower[k] + b.upper[k] - 1.0) <= 2.0 * cell);
    }
    CHECK(b.lower_at(2.5) == doctest::Approx(b.lower[200]).epsilon(1e-12));
}

TEST_CASE("one-step tree reduces to a two-leaf decision") {
    const double c = 0.2, T = 0.25;
    const double val = brute_force_tree_value(1.0, LossModel::cross_entropy(), c, T, 1, 0.5);

    const auto S = [](double l) { return 1.0 / (1.0 + std::exp(-l)); };
    const auto g = [](double p) { return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p); };
    const double delta = std::sqrt(T);
    const double pu = (S(0.0) - S(-delta)) / (S(delta) - S(-delta));
    const double cont = c * T + pu * g(S(delta)) + (1.0 - pu) * g(S(-delta));
    CHECK(val == doctest::Approx(std::min(g(0.5), cont)).epsilon(1e-14));
}

TEST_CASE("costless tree equals the lattice expectation of the terminal loss") {
    // With c = 0 and a concave loss, continuing is always weakly better
    // (the posterior is a martingale), so backward induction must return the
    // expectation of g over the terminal lattice layer.
    const double eta = 0.8, T = 0.7, prior = 0.6;
    const int n = 5;
    const LossModel loss = LossModel::cross_entropy();
    const double val = brute_force_tree_value(eta, loss, 0.0, T, n, prior);

    const auto S = [](double l) { return 1.0 / (1.0 + std::exp(-l)); };
    const double delta = eta * std::sqrt(T / n);
    const double l0 = std::log(prior / (1.0 - prior));
    std::vector<double> prob{1.0};
    for (int k = 0; k < n; ++k) {
        std::vector<double> next(static_cast<std::size_t>(k) + 2, 0.0);
        for (int i = 0; i <= k; ++i) {
            const double l = l0 + (2.0 * i - k) * delta;
            const double pu = (S(l) - S(l - delta)) / (S(l + delta) - S(l - delta));
            next[static_cast<std::size_t>(i) + 1] += prob[static_cast<std::size_t>(i)] * pu;
            next[static_cast<std::size_t>(i)] += prob[static_cast<std::size_t>(i)] * (1.0 - pu);
        }
        prob = next;
    }
    double expect = 0.0;
    for (int i = 0; i <= n; ++i) {
        expect += prob[static_cast<std::size_t>(i)] * loss.value(S(l0 + (2.0 * i - n) * delta));
    }
    CHECK(val == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("tree value is monotone in the cost and bounded by the loss") {
    const LossModel g = LossModel::cross_entropy();
    const double lo = brute_force_tree_value(1.0, g, 0.05, 1.0, 4, 0.5);
    const double hi = brute_force_tree_value(1.0, g, 0.2, 1.0, 4, 0.5);
    CHECK(lo <= hi);
    CHECK(hi <= g.value(0.5) + 1e-15);
    CHECK(lo >= 0.0);
    CHECK(brute_force_tree_value(1.0, g, 0.1, 1.0, 4, 0.3) ==
          doctest::Approx(brute_force_tree_value(1.0, g, 0.1, 1.0, 4, 0.7)).epsilon(1e-12));
    CHECK_THROWS_AS(brute_force_tree_value(1.0, g, 0.1, 1.0, 7, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_tree_value(1.0, g, 0.1, 1.0, 0, 0.5), std::invalid_argument);
}

TEST_CASE("stationary boundaries: existence, smooth fit, bounds") {
    const InfiniteHorizonSolution sol =
        solve_infinite_horizon(1.0, LossModel::cross_entropy(), 0.1);
    REQUIRE(sol.interior);
    CHECK(sol.lower > 0.0);
    CHECK(sol.lower < 0.5);
    CHECK(sol.upper == doctest::Approx(1.0 - sol.lower).epsilon(1e-12));
    CHECK(sol.fit_residual <= 1e-8);

    // value_at interpolates the tabulated curve, so comparisons carry the
    // O(h^2 V'') interpolation error of the 1000-node grid.
    const LossModel g = LossModel::cross_entropy();
    CHECK(sol.value_at(sol.lower) == doctest::Approx(g.value(sol.lower)).epsilon(1e-5));
    CHECK(sol.value_at(0.5) < g.value(0.5));
    for (const double p : {0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95}) {
        CHECK(sol.value_at(p) <= g.value(p) + 1e-12);
        CHECK(sol.value_at(p) >= 0.0);
    }

    // Smooth fit: the secant over a few grid cells matches g' at the boundary
    // up to the O(h V'') secant bias; a genuine kink would be O(1) off.
    const double h = 4e-3;
    const double slope = (sol.value_at(sol.lower + h) - sol.value_at(sol.lower)) / h;
    CHECK(slope == doctest::Approx(g.derivative(sol.lower)).epsilon(0.03));
}

TEST_CASE("stationary solution agrees with a long-horizon finite solve") {
    const InfiniteHorizonSolution inf =
        solve_infinite_horizon(1.0, LossModel::cross_entropy(), 0.1);
    const ValueSurface fin =
        solve_value(VolatilityCurve::constant(1.0, 50.0), LossModel::cross_entropy(), 0.1,
                    400, 2500);
    for (const double p : {0.3, 0.5, 0.7}) {
        CHECK(fin.value_at(0.0, p) == doctest::Approx(inf.value_at(p)).epsilon(1e-3));
    }
    // Smooth fit makes g - V quadratic at the boundary, so a value error of
    // size d moves the extracted crossing by sqrt(d / kappa); at this
    // resolution that is a few times 1e-2, much larger than the value error.
    const BoundaryPair b = extract_boundaries(fin);
    CHECK(std::abs(b.lower[0] - inf.lower) <= 0.02);
    CHECK(std::abs(b.upper[0] - inf.upper) <= 0.02);
}

TEST_CASE("finite horizon can only cost more than infinite horizon") {
    const InfiniteHorizonSolution inf =
        solve_infinite_horizon(1.0, LossModel::cross_entropy(), 0.1);
    const ValueSurface fin = solve_value(VolatilityCurve::constant(1.0, 3.0),
                                         LossModel::cross_entropy(), 0.1, 300, 300);
    for (std::size_t i = 0; i < fin.probs.size(); ++i) {
        CHECK(inf.value_at(fin.probs[i]) <= fin.value(0, static_cast<int>(i)) + 1e-4);
    }
}

TEST_CASE("shallow curvature leaves no stationary continuation region") {
    // beta = 1 gives center curvature -1/16, not below -c/eta^2 = -0.1.
    const InfiniteHorizonSolution sol =
        solve_infinite_horizon(1.0, LossModel::scaled_quadratic(1.0), 0.1);
    CHECK_FALSE(sol.interior);
    CHECK(sol.lower == 0.5);
    CHECK(sol.upper == 0.5);
    const LossModel g = LossModel::scaled_quadratic(1.0);
    CHECK(sol.value_at(0.3) == doctest::Approx(g.value(0.3)).epsilon(1e-12));
}

TEST_CASE("clock-changed solver agrees with the direct one for constant volatility") {
    const auto eta = VolatilityCurve::constant(1.0, 1.0);
    const LossModel g = LossModel::cross_entropy();
    const ValueSurface direct = solve_value(eta, g, 0.1, 240, 240);
    const ValueSurface changed = solve_value_timechanged(eta, g, 0.1, 240, 240);

    double sup = 0.0;
    for (std::size_t k = 0; k < direct.times.size(); ++k) {
        if (direct.times[k] > 0.9) break;
        for (std::size_t i = 0; i < direct.probs.size(); ++i) {
            const double p = direct.probs[i];
            if (p < 0.05 || p > 0.95) continue;
            sup = std::max(sup, std::abs(direct.value(static_cast<int>(k), static_cast<int>(i)) -
                                         changed.value(static_cast<int>(k), static_cast<int>(i))));
        }
    }
    CHECK(sup <= 2e-3);
}

TEST_CASE("clock-changed solver stays below the obstacle after mapping back") {
    const auto eta = falling_curve(1.2, 0.8, 1.0);
    const LossModel g = LossModel::cross_entropy();
    // The mapped-back surface carries a bilinear interpolation overshoot of
    // order h_l^2 max|d^2 g/dl^2| / 8, about 1e-5 on the default logit grid.
    const ValueSurface s = solve_value_timechanged(eta, g, 0.1, 150, 150);
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        for (std::size_t i = 1; i + 1 < s.probs.size(); ++i) {
            CHECK(s.value(static_cast<int>(k), static_cast<int>(i)) <= s.g[i] + 2e-5);
            CHECK(s.value(static_cast<int>(k), static_cast<int>(i)) >= -1e-12);
        }
    }
    // Deep in the stopping region the artificial boundary is invisible.
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        for (std::size_t i = 1; i + 1 < s.probs.size(); ++i) {
            const double p = s.probs[i];
            if (p < 0.97) continue;
            CHECK(std::abs(s.value(static_cast<int>(k), static_cast<int>(i)) - s.g[i]) <= 1e-4);
        }
    }
}

TEST_CASE("clock-changed solver rejects a grid that breaks monotonicity") {
    const auto eta = VolatilityCurve::constant(1.0, 1.0);
    CHECK_THROWS_AS(solve_value_timechanged(eta, LossModel::cross_entropy(), 0.1, 50, 50, 12.0, 8),
                    std::runtime_error);
}

TEST_CASE("classic loss with falling volatility: monotone value and boundaries") {
    const auto eta = falling_curve(1.0, 0.6, 2.0);
    const LossModel g = LossModel::classic(3.0, 1.5);
    const ValueSurface s = solve_value(eta, g, 0.1, 300, 300);
    const BoundaryPair b = extract_boundaries(s);
    const double cell = 1.0 / 300.0;

    // Value nondecreasing in t at fixed p.
    for (const double p : {0.2, 1.0 / 3.0, 0.5, 0.7}) {
        for (std::size_t k = 0; k + 1 < s.times.size(); ++k) {
            CHECK(s.value_at(s.times[k], p) <= s.value_at(s.times[k + 1], p) + 1e-9);
        }
    }

    std::size_t last = b.times.size();
    while (last > 0 && b.degenerate[last - 1] == 1) --last;
    REQUIRE(last > 0);
    for (std::size_t k = 0; k + 1 < last; ++k) {
        CHECK(b.lower[k] <= b.lower[k + 1] + 5e-4);
        CHECK(b.upper[k] >= b.upper[k + 1] - 5e-4);
    }
    // Both boundaries pinch onto the kink: the terminal slice collapses there
    // exactly, and one step earlier they are already within the near-expiry
    // O(sqrt(dt log)) window around it.
    CHECK(std::abs(b.lower.back() - 1.0 / 3.0) <= 2.0 * cell);
    CHECK(std::abs(b.upper.back() - 1.0 / 3.0) <= 2.0 * cell);
    CHECK(std::abs(b.lower[last - 1] - 1.0 / 3.0) <= 0.06);
    CHECK(std::abs(b.upper[last - 1] - 1.0 / 3.0) <= 0.06);
}

TEST_CASE("degenerate boundaries give a near-zero integral residual") {
    // With an empty continuation region the residual reduces to the exact
    // martingale identity E[g(P_T)] - g(p0) = E[integral of eta^2 Ag(P)], so
    // the estimate must vanish up to sampling and Riemann error.
    const auto eta = VolatilityCurve::constant(1.0, 1.0);
    const int n = 100;
    BoundaryPair b;
    b.times = uniform_nodes(0.0, 1.0, n);
    b.lower.assign(static_cast<std::size_t>(n) + 1, 0.5);
    b.upper.assign(static_cast<std::size_t>(n) + 1, 0.5);
    b.degenerate.assign(static_cast<std::size_t>(n) + 1, 1);
    b.center = 0.5;

    const ResidualEstimate r = integral_residual(b, eta, LossModel::cross_entropy(), 0.1, 0.0,
                                                 20000, 0.0025, 99);
    CHECK(std::abs(r.lower) <= 3.0 * r.se_lower + 2e-3);
    CHECK(std::abs(r.upper) <= 3.0 * r.se_upper + 2e-3);
    CHECK(r.se_lower > 0.0);
}

TEST_CASE("solver boundaries pass the integral-equation check") {
    const auto eta = VolatilityCurve::constant(1.0, 1.5);
    const LossModel g = LossModel::cross_entropy();
    const ValueSurface s = solve_value(eta, g, 0.1, 300, 300);
    const BoundaryPair b = extract_boundaries(s);
    const ResidualEstimate r = integral_residual(b, eta, g, 0.1, 0.0, 20000, 0.005, 7);
    CHECK(std::abs(r.lower) <= 3.0 * r.se_lower + 2e-3);
    CHECK(std::abs(r.upper) <= 3.0 * r.se_upper + 2e-3);
}
