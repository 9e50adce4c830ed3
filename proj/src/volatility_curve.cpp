#include "seqtest/volatility_curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqtest/math_util.hpp"

namespace seqtest {

VolatilityCurve::VolatilityCurve(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.size() < 2 || values_.size() != times_.size()) {
        throw std::invalid_argument("volatility curve: grids must match and hold >= 2 nodes");
    }
    if (times_.front() != 0.0) throw std::invalid_argument("volatility curve: grid must start at 0");
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("volatility curve: time grid must be strictly increasing");
        }
    }
    min_raw_ = values_.front();
    for (double& v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("volatility curve: non-finite value");
        min_raw_ = std::min(min_raw_, v);
        v = std::max(v, kEtaFloor);
    }
    alpha_.assign(times_.size(), 0.0);
    for (std::size_t i = 1; i < times_.size(); ++i) {
        const double a = values_[i - 1], b = values_[i];
        alpha_[i] = alpha_[i - 1] + 0.5 * (a * a + b * b) * (times_[i] - times_[i - 1]);
    }
}

VolatilityCurve VolatilityCurve::constant(double eta, double horizon, int n_steps) {
    auto ts = uniform_nodes(0.0, horizon, n_steps);
    return VolatilityCurve(ts, std::vector<double>(ts.size(), eta));
}

double VolatilityCurve::operator()(double t) const {
    return interp_linear(times_, values_, t);
}

double VolatilityCurve::clock(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= times_.back()) return alpha_.back();
    const auto it = std::lower_bound(times_.begin(), times_.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - times_.begin());
    if (times_[hi] == t) return alpha_[hi];
    const std::size_t lo = hi - 1;
    const double a = values_[lo];
    const double b = (*this)(t);
    return alpha_[lo] + 0.5 * (a * a + b * b) * (t - times_[lo]);
}

double VolatilityCurve::inverse_clock(double u) const {
    const double total = alpha_.back();
    if (u < -1e-12 || u > total * (1.0 + 1e-12) + 1e-12) {
        throw std::out_of_range("inverse_clock: argument outside [0, clock(T)]");
    }
    if (u <= 0.0) return 0.0;
    if (u >= total) return times_.back();
    double lo = 0.0, hi = times_.back();
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (clock(mid) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

VolatilityCurve induced_volatility(const SignalModel& sig, const StoppedMeasurePair& mu,
                                   const Mollifier& phi, double horizon, int n_steps) {
    auto ts = uniform_nodes(0.0, horizon, n_steps);
    std::vector<double> vals(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        vals[i] = sig.raw_volatility(mollified_fraction(mu, phi, 0, ts[i]),
                                     mollified_fraction(mu, phi, 1, ts[i]));
    }
    return VolatilityCurve(std::move(ts), std::move(vals));
}

ConditionalMoments conditional_moments(const VolatilityCurve& eta, double l0, int theta, double t) {
    if (theta != 0 && theta != 1) {
        throw std::invalid_argument("conditional_moments: hypothesis must be 0 or 1");
    }
    const double a = eta.clock(t);
    return {l0 + (theta == 1 ? 0.5 : -0.5) * a, a};
}

} // namespace seqtest
