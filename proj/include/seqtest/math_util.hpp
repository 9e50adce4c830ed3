#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace seqtest {

// Log-likelihood ratios are clamped to this magnitude before exponentiation.
inline constexpr double kLlrClamp = 709.0;

inline double logit(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("logit: argument must lie strictly inside (0,1)");
    }
    return std::log(p / (1.0 - p));
}

// Inverse of logit. Saturates smoothly for |l| beyond the clamp; the result is
// always strictly inside (0,1).
inline double sigmoid(double l) {
    if (l > kLlrClamp) l = kLlrClamp;
    if (l < -kLlrClamp) l = -kLlrClamp;
    if (l >= 0.0) {
        return 1.0 / (1.0 + std::exp(-l));
    }
    const double e = std::exp(l);
    return e / (1.0 + e);
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

inline std::vector<double> uniform_nodes(double a, double b, int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("uniform_nodes: need at least one step");
    std::vector<double> out(static_cast<std::size_t>(n_steps) + 1);
    const double h = (b - a) / n_steps;
    for (int i = 0; i <= n_steps; ++i) out[static_cast<std::size_t>(i)] = a + h * i;
    out.back() = b;
    return out;
}

// Linear interpolation on a strictly increasing abscissa grid; clamps outside.
inline double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("interp_linear: need matching grids with >= 2 nodes");
    }
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    if (xs[hi] == x) return ys[hi];  // exact node hits stay exact
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
}

// Composite Simpson rule with n panels (n even) for a callable f on [a,b].
template <class F>
double simpson(F&& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; i += 2) odd += f(a + h * i);
    for (int i = 2; i < n; i += 2) even += f(a + h * i);
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

} // namespace seqtest
