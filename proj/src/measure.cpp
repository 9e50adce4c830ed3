#include "seqtest/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqtest/math_util.hpp"

namespace seqtest {

namespace {

void sanitize(std::vector<double>& f) {
    double run = 0.0;
    for (double& v : f) {
        v = std::clamp(v, 0.0, 1.0);
        run = std::max(run, v);
        v = run;
    }
    f.back() = 1.0;
}

} // namespace

StoppedMeasurePair::StoppedMeasurePair(std::vector<double> times, std::vector<double> f0,
                                       std::vector<double> f1)
    : times_(std::move(times)), f0_(std::move(f0)), f1_(std::move(f1)) {
    if (times_.size() < 2 || f0_.size() != times_.size() || f1_.size() != times_.size()) {
        throw std::invalid_argument("measure: grids must match and hold at least two nodes");
    }
    if (times_.front() != 0.0) throw std::invalid_argument("measure: grid must start at 0");
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("measure: time grid must be strictly increasing");
        }
    }
    for (double v : f0_)
        if (!std::isfinite(v)) throw std::invalid_argument("measure: non-finite CDF value");
    for (double v : f1_)
        if (!std::isfinite(v)) throw std::invalid_argument("measure: non-finite CDF value");
    sanitize(f0_);
    sanitize(f1_);
}

StoppedMeasurePair StoppedMeasurePair::uniform(double horizon, int n_steps) {
    auto ts = uniform_nodes(0.0, horizon, n_steps);
    std::vector<double> f(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) f[i] = ts[i] / horizon;
    return StoppedMeasurePair(ts, f, f);
}

StoppedMeasurePair StoppedMeasurePair::point_mass_at_zero(double horizon, int n_steps) {
    auto ts = uniform_nodes(0.0, horizon, n_steps);
    std::vector<double> f(ts.size(), 1.0);
    return StoppedMeasurePair(ts, f, f);
}

StoppedMeasurePair StoppedMeasurePair::point_mass_at_horizon(double horizon, int n_steps) {
    auto ts = uniform_nodes(0.0, horizon, n_steps);
    std::vector<double> f(ts.size(), 0.0);
    f.back() = 1.0;
    return StoppedMeasurePair(ts, f, f);
}

double StoppedMeasurePair::cdf(int j, double t) const {
    if (j != 0 && j != 1) throw std::invalid_argument("measure: hypothesis index must be 0 or 1");
    if (t < times_.front()) return 0.0;
    if (t >= times_.back()) return 1.0;
    const auto& f = (j == 0) ? f0_ : f1_;
    return interp_linear(times_, f, t);
}

StoppedMeasurePair StoppedMeasurePair::blend(const StoppedMeasurePair& other, double w) const {
    if (times_ != other.times_) throw std::invalid_argument("blend: time grids differ");
    if (!(w >= 0.0) || !(w <= 1.0)) throw std::invalid_argument("blend: weight outside [0,1]");
    std::vector<double> g0(times_.size()), g1(times_.size());
    for (std::size_t i = 0; i < times_.size(); ++i) {
        g0[i] = (1.0 - w) * f0_[i] + w * other.f0_[i];
        g1[i] = (1.0 - w) * f1_[i] + w * other.f1_[i];
    }
    return StoppedMeasurePair(times_, std::move(g0), std::move(g1));
}

double kolmogorov_distance(const StoppedMeasurePair& a, const StoppedMeasurePair& b) {
    if (a.times() != b.times()) {
        throw std::invalid_argument("kolmogorov_distance: time grids differ");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a.f0()[i] - b.f0()[i]));
        d = std::max(d, std::abs(a.f1()[i] - b.f1()[i]));
    }
    return d;
}

} // namespace seqtest
