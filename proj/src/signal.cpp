#include "seqtest/signal.hpp"

#include <cmath>

#include "seqtest/math_util.hpp"
#include "seqtest/measure.hpp"

namespace seqtest {

namespace {
constexpr int kKernelPanels = 1024;
}

Mollifier::Mollifier(double width) : width_(width), scale_(1.0) {
    if (!(width > 0.0)) throw std::invalid_argument("mollifier: width must be positive");
    const auto bump = [width](double u) {
        const double v = u * (width - u);
        return v * v * v;
    };
    const double raw = simpson(bump, 0.0, width, kKernelPanels);
    scale_ = 1.0 / raw;
}

double Mollifier::density(double u) const {
    if (u <= 0.0 || u >= width_) return 0.0;
    const double v = u * (width_ - u);
    return scale_ * v * v * v;
}

double Mollifier::mass() const {
    return simpson([this](double u) { return density(u); }, 0.0, width_, kKernelPanels);
}

double mollified_fraction(const StoppedMeasurePair& mu, const Mollifier& phi, int j, double t) {
    const auto f = [&](double u) { return mu.cdf(j, t - u) * phi.density(u); };
    return simpson(f, 0.0, phi.width(), kKernelPanels);
}

double volatility(const SignalModel& sig, const StoppedMeasurePair& mu, const Mollifier& phi,
                  double t) {
    const double raw = sig.raw_volatility(mollified_fraction(mu, phi, 0, t),
                                          mollified_fraction(mu, phi, 1, t));
    return std::max(raw, kEtaFloor);
}

} // namespace seqtest
