#pragma once

#include <stdexcept>
#include <vector>

namespace seqtest {

class StoppedMeasurePair;

// Volatility below this floor is clamped before any solver or sampler sees it.
inline constexpr double kEtaFloor = 1e-3;

/**
 * Parametric signal-to-noise model: the effective volatility of the
 * log-likelihood ratio is lambda0 + lambda1 * (f0 + f1) / 2, where f0, f1 are
 * the mollified fractions of stopped agents under the two hypotheses.
 * lambda1 < 0 gives preemption (early stopping degrades everyone's signal),
 * lambda1 > 0 a war of attrition.
 */
struct SignalModel {
    double lambda0{1.0};
    double lambda1{0.0};

    SignalModel() = default;
    SignalModel(double l0, double l1) : lambda0(l0), lambda1(l1) {
        if (!(lambda0 > 0.0)) throw std::invalid_argument("signal: lambda0 must be positive");
        if (!(lambda0 + lambda1 > 0.0)) {
            throw std::invalid_argument("signal: lambda0 + lambda1 must be positive");
        }
    }

    // The two conditional drifts are (j - 1/2)(lambda0 + lambda1 f_j), so
    // their gap carries each stopped fraction with weight one half.
    double raw_volatility(double f0, double f1) const {
        return lambda0 + 0.5 * lambda1 * (f0 + f1);
    }

    // Exact envelope [min_volatility, max_volatility]: the half-sum of the
    // stopped fractions ranges over [0, 1]. The kEtaFloor clamp can only
    // engage when lambda0 + lambda1 itself sits below the floor.
    double min_volatility() const { return std::min(lambda0, lambda0 + lambda1); }
    double max_volatility() const { return std::max(lambda0, lambda0 + lambda1); }
};

/**
 * Smooth averaging kernel with support [0, width]: k(u) proportional to
 * (u (width - u))^3, normalized to unit mass by quadrature. Weighting a
 * measure's CDF with it yields the fraction of the population stopped in the
 * recent past.
 */
class Mollifier {
public:
    explicit Mollifier(double width);

    double width() const { return width_; }
    double density(double u) const;
    // Quadrature mass of the normalized kernel; equals 1 up to quadrature error.
    double mass() const;

private:
    double width_;
    double scale_;
};

// Mollified stopped fraction for hypothesis j at time t:
// integral of cdf_j(t - u) * density(u) over the kernel support.
double mollified_fraction(const StoppedMeasurePair& mu, const Mollifier& phi, int j, double t);

// Clamped effective volatility at time t induced by the measure pair.
double volatility(const SignalModel& sig, const StoppedMeasurePair& mu, const Mollifier& phi,
                  double t);

} // namespace seqtest
