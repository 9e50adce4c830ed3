#include "seqtest/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqtest {

namespace {

void require_unit_interval(double p) {
    if (!(p >= 0.0) || !(p <= 1.0)) {
        throw std::domain_error("loss: argument outside [0,1]");
    }
}

} // namespace

LossModel LossModel::cross_entropy() {
    LossModel m;
    m.variant_ = LossVariant::kCrossEntropy;
    return m;
}

LossModel LossModel::scaled_quadratic(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("scaled_quadratic: beta must be positive");
    LossModel m;
    m.variant_ = LossVariant::kScaledQuadratic;
    m.beta_ = beta;
    return m;
}

LossModel LossModel::classic(double a1, double a2) {
    if (!(a1 > 0.0) || !(a2 > 0.0)) throw std::invalid_argument("classic: penalties must be positive");
    LossModel m;
    m.variant_ = LossVariant::kClassic;
    m.a1_ = a1;
    m.a2_ = a2;
    return m;
}

double LossModel::value(double p) const {
    require_unit_interval(p);
    switch (variant_) {
    case LossVariant::kCrossEntropy: {
        if (p == 0.0 || p == 1.0) return 0.0;
        return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
    }
    case LossVariant::kScaledQuadratic:
        return beta_ * p * (1.0 - p);
    case LossVariant::kClassic:
        return std::min(a1_ * p, a2_ * (1.0 - p));
    }
    throw std::logic_error("loss: unknown variant");
}

double LossModel::derivative(double p) const {
    require_unit_interval(p);
    switch (variant_) {
    case LossVariant::kCrossEntropy:
        if (p == 0.0 || p == 1.0) {
            throw std::domain_error("cross_entropy: derivative diverges at the endpoints");
        }
        return std::log1p(-p) - std::log(p);
    case LossVariant::kScaledQuadratic:
        return beta_ * (1.0 - 2.0 * p);
    case LossVariant::kClassic: {
        const double kink = center();
        if (p == kink) {
            throw std::domain_error("classic: loss is not differentiable at the kink");
        }
        return p < kink ? a1_ : -a2_;
    }
    }
    throw std::logic_error("loss: unknown variant");
}

double LossModel::curvature(double p) const {
    require_unit_interval(p);
    switch (variant_) {
    case LossVariant::kCrossEntropy:
        // p^2(1-p)^2 * (-1/(p(1-p))) / 2
        return -0.5 * p * (1.0 - p);
    case LossVariant::kScaledQuadratic:
        return -beta_ * p * p * (1.0 - p) * (1.0 - p);
    case LossVariant::kClassic: {
        const double kink = center();
        if (p == kink) {
            throw std::domain_error("classic: curvature undefined at the kink");
        }
        return 0.0;
    }
    }
    throw std::logic_error("loss: unknown variant");
}

double LossModel::center() const {
    if (variant_ == LossVariant::kClassic) return a2_ / (a1_ + a2_);
    return 0.5;
}

std::string LossModel::name() const {
    switch (variant_) {
    case LossVariant::kCrossEntropy: return "cross_entropy";
    case LossVariant::kScaledQuadratic: return "scaled_quadratic";
    case LossVariant::kClassic: return "classic";
    }
    return "unknown";
}

} // namespace seqtest
