#pragma once

#include <string>

namespace seqtest {

enum class LossVariant { kCrossEntropy, kScaledQuadratic, kClassic };

/**
 * Terminal decision loss g on [0,1] together with the curvature functional
 *   curvature(p) = p^2 (1-p)^2 g''(p) / 2,
 * which is what the generator of the posterior applies to g per unit squared
 * volatility. The classic variant min(a1*p, a2*(1-p)) is piecewise linear:
 * curvature vanishes away from the kink and derivative queries at the kink
 * raise a domain error.
 */
class LossModel {
public:
    static LossModel cross_entropy();
    static LossModel scaled_quadratic(double beta);
    static LossModel classic(double a1, double a2);

    double value(double p) const;
    double derivative(double p) const;
    double curvature(double p) const;

    // Point the stopping region straddles: 1/2 for the smooth symmetric
    // variants, a2/(a1+a2) for the classic one.
    double center() const;
    double sup_norm() const { return value(center()); }

    LossVariant variant() const { return variant_; }
    bool smooth() const { return variant_ != LossVariant::kClassic; }
    double beta() const { return beta_; }
    double a1() const { return a1_; }
    double a2() const { return a2_; }
    std::string name() const;

private:
    LossModel() = default;

    LossVariant variant_{LossVariant::kCrossEntropy};
    double beta_{0.0};
    double a1_{0.0};
    double a2_{0.0};
};

} // namespace seqtest
