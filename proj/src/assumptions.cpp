#include "seqtest/assumptions.hpp"

#include <cmath>

#include <json.hpp>

namespace seqtest {

AssumptionReport check_assumptions(const LossModel& loss, const SignalModel& sig, double cost) {
    if (!(cost > 0.0)) throw std::invalid_argument("check_assumptions: cost must be positive");

    AssumptionReport rep;
    rep.vol_lower = sig.min_volatility();
    rep.vol_upper = sig.max_volatility();
    rep.depth_bound = -cost / (rep.vol_lower * rep.vol_lower);

    if (loss.smooth()) {
        rep.applicable_smooth = true;
        const int n = 1000;

        rep.g1_endpoints = std::abs(loss.value(0.0)) <= 1e-15 && std::abs(loss.value(1.0)) <= 1e-15;
        if (!rep.g1_endpoints) rep.violations.push_back("G1: loss does not vanish at the endpoints");

        rep.g1_symmetric = true;
        rep.g1_concave = true;
        rep.g2_sign_pattern = true;
        for (int i = 1; i < n; ++i) {
            const double p = static_cast<double>(i) / n;
            if (std::abs(loss.value(p) - loss.value(1.0 - p)) > 1e-12) rep.g1_symmetric = false;
            if (loss.curvature(p) > 1e-15) rep.g1_concave = false;
        }
        // Sign pattern of d/dp curvature on either side of the center,
        // sampled by central differences.
        const double dp = 1e-6;
        for (int i = 1; i < n; ++i) {
            const double p = static_cast<double>(i) / n;
            if (p <= dp || p >= 1.0 - dp || std::abs(p - 0.5) < 2.0 * dp) continue;
            const double slope = (loss.curvature(p + dp) - loss.curvature(p - dp)) / (2.0 * dp);
            if (p < 0.5 && slope > 1e-9) rep.g2_sign_pattern = false;
            if (p > 0.5 && slope < -1e-9) rep.g2_sign_pattern = false;
        }
        if (!rep.g1_symmetric) rep.violations.push_back("G1: loss is not symmetric about 1/2");
        if (!rep.g1_concave) rep.violations.push_back("G1: loss is not concave");
        if (!rep.g2_sign_pattern) {
            rep.violations.push_back("G2: curvature is not decreasing-then-increasing about 1/2");
        }

        rep.curvature_center = loss.curvature(0.5);
        rep.g3_depth = rep.curvature_center < rep.depth_bound;
        if (!rep.g3_depth) {
            rep.violations.push_back(
                "G3: curvature at the center is too shallow for the observation cost at the "
                "worst-case volatility");
        }
    } else {
        rep.applicable_classic = true;
        rep.classic_form = true;  // by construction of the variant
        rep.curvature_center = 0.0;
        rep.classic_lambda1_nonpositive = sig.lambda1 <= 0.0;
        if (!rep.classic_lambda1_nonpositive) {
            rep.violations.push_back(
                "C2: monotone (nonincreasing) volatility requires lambda1 <= 0 under the "
                "parametric signal; must otherwise be checked per measure");
        }
    }
    return rep;
}

std::string to_json_string(const AssumptionReport& rep) {
    nlohmann::json j;
    j["ok"] = rep.ok();
    j["violations"] = rep.violations;
    j["vol_lower"] = rep.vol_lower;
    j["vol_upper"] = rep.vol_upper;
    j["curvature_center"] = rep.curvature_center;
    j["depth_bound"] = rep.depth_bound;
    if (rep.applicable_smooth) {
        j["g1_endpoints"] = rep.g1_endpoints;
        j["g1_symmetric"] = rep.g1_symmetric;
        j["g1_concave"] = rep.g1_concave;
        j["g2_sign_pattern"] = rep.g2_sign_pattern;
        j["g3_depth"] = rep.g3_depth;
    }
    if (rep.applicable_classic) {
        j["classic_form"] = rep.classic_form;
        j["classic_lambda1_nonpositive"] = rep.classic_lambda1_nonpositive;
    }
    return j.dump(2);
}

} // namespace seqtest
