#pragma once

#include <string>
#include <vector>

#include "seqtest/loss.hpp"
#include "seqtest/signal.hpp"

namespace seqtest {

/**
 * Outcome of the structural checks that guarantee a nonempty continuation
 * region and the two-boundary form of the stopping rule. Violations are
 * reported, never fatal: the solvers keep working (a violated wellposedness
 * condition typically shows up as an empty continuation region or as a
 * degenerate equilibrium, which downstream code flags on its own).
 */
struct AssumptionReport {
    bool applicable_smooth{false};   // G-checks run (smooth variants only)
    bool g1_endpoints{false};
    bool g1_symmetric{false};
    bool g1_concave{false};
    bool g2_sign_pattern{false};
    bool g3_depth{false};            // curvature at center below -cost/h^2

    bool applicable_classic{false};  // classic variant checks
    bool classic_form{false};
    // The monotone-volatility condition depends on the population measure; for
    // the parametric signal it reduces to lambda1 <= 0, which is all that can
    // be verified ahead of time.
    bool classic_lambda1_nonpositive{false};

    double vol_lower{0.0};           // documented volatility envelope
    double vol_upper{0.0};
    double curvature_center{0.0};
    double depth_bound{0.0};         // -cost / vol_lower^2

    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

AssumptionReport check_assumptions(const LossModel& loss, const SignalModel& sig, double cost);

std::string to_json_string(const AssumptionReport& report);

} // namespace seqtest
