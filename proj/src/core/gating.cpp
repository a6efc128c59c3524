#include "core/gating.hpp"

#include <algorithm>

namespace agilegate {

std::vector<Id> GateDecision::failing_factors() const {
    std::vector<Id> failing;
    for (const auto& result : factor_results) {
        if (!result.pass) {
            failing.push_back(result.factor);
        }
    }
    return failing;
}

GateDecision decide_go_nogo(const std::map<Id, Degree>& degrees, const GatePolicy& policy) {
    if (degrees.empty()) {
        throw Error(Errc::EmptyFactorSet, "go/no-go gate needs at least one success factor");
    }

    GateDecision decision;
    for (const auto& [factor, degree] : degrees) {
        const double threshold = policy.threshold_for(factor);
        if (threshold < 0.0 || threshold > 1.0) {
            throw Error(Errc::InvalidArgument,
                        "threshold for '" + factor + "' is outside [0, 1]");
        }
        FactorResult result;
        result.factor = factor;
        result.degree = degree.value;
        result.threshold = threshold;
        result.pass = degree.value >= threshold - kDegreeTolerance;
        result.margin = degree.value - threshold;
        decision.factor_results.push_back(std::move(result));
    }

    // Failing factors first; the map already delivers each group by id.
    std::stable_partition(decision.factor_results.begin(), decision.factor_results.end(),
                          [](const FactorResult& r) { return !r.pass; });
    decision.verdict = decision.failing_factors().empty() ? Verdict::Go : Verdict::NoGo;
    return decision;
}

} // namespace agilegate
