#pragma once

// Stage 1: the Go/No-go gate over success-factor degrees of presence.
// A factor passes when its degree is at or above its threshold (closed
// comparison); the verdict is Go only when every factor passes.

#include <map>
#include <vector>

#include "core/scoring.hpp"

namespace agilegate {

struct GatePolicy {
    double default_threshold = 0.8;
    std::map<Id, double> overrides;

    double threshold_for(const Id& factor) const {
        const auto it = overrides.find(factor);
        return it == overrides.end() ? default_threshold : it->second;
    }

    bool operator==(const GatePolicy&) const = default;
};

enum class Verdict { Go, NoGo };

struct FactorResult {
    Id factor;
    double degree = 0.0;
    double threshold = 0.0;
    bool pass = false;
    double margin = 0.0; // degree - threshold

    bool operator==(const FactorResult&) const = default;
};

struct GateDecision {
    Verdict verdict = Verdict::NoGo;
    // Failing factors first, then passing; each group ordered by id.
    std::vector<FactorResult> factor_results;

    std::vector<Id> failing_factors() const;

    bool operator==(const GateDecision&) const = default;
};

// Throws EmptyFactorSet on an empty degree map (a gate with nothing to
// check is an invalid assessment, not a Go) and InvalidArgument on a
// threshold outside [0, 1].
GateDecision decide_go_nogo(const std::map<Id, Degree>& degrees, const GatePolicy& policy);

} // namespace agilegate
