#pragma once

// End-to-end orchestration of the three stages. Stage 1 always runs first
// and a No-go halts everything behind it: stages 2 and 3 are marked skipped
// and none of their computation (or errors) can be observed. Single-stage
// entry points produce the same report shape with not-run stages marked
// "not requested".

#include <optional>

#include "core/gating.hpp"
#include "core/readiness.hpp"
#include "core/suitability.hpp"

namespace agilegate {

inline constexpr const char* kToolName = "agilegate";
inline constexpr const char* kToolVersion = "1.0.0";

// Skip reasons are part of the report contract.
inline constexpr const char* kSkipNoGo = "stage-1 no-go";
inline constexpr const char* kSkipNotRequested = "not requested";

struct PipelinePolicies {
    GatePolicy gate;
    ReadinessPolicy readiness;

    bool operator==(const PipelinePolicies&) const = default;
};

// Parses a policies document: {"gate": {...}, "readiness": {...}}.
PipelinePolicies parse_policies(std::string_view json_text);

struct InputDigest {
    std::string kind; // catalog, profile, objectives, responses, policies
    std::string digest;

    bool operator==(const InputDigest&) const = default;
};

// FNV-1a 64-bit content fingerprint, rendered "fnv1a64:<16 hex digits>".
std::string content_digest(std::string_view bytes);
InputDigest make_digest(std::string kind, std::string_view bytes);

enum class GateStatus { Completed, Assumed };

struct ReadinessSection {
    std::vector<Id> objectives; // sorted echo of the adoption objectives
    CandidateSet candidates;
    ReadinessReport report;

    bool operator==(const ReadinessSection&) const = default;
};

struct DecisionReport {
    std::string tool; // "agilegate <version>"
    std::vector<InputDigest> inputs;
    PipelinePolicies policies;
    std::vector<std::string> notes;
    std::vector<std::string> warnings;
    std::map<Id, double> overrides; // what-if hypotheticals, empty otherwise

    GateStatus gate_status = GateStatus::Completed;
    std::optional<GateDecision> gate; // absent iff gate_status == Assumed

    std::optional<std::vector<SuitabilityVerdict>> suitability;
    std::string suitability_skip_reason;

    std::optional<ReadinessSection> readiness;
    std::string readiness_skip_reason;

    std::optional<AdoptionPlan> plan;
    std::string plan_skip_reason;

    bool operator==(const DecisionReport&) const = default;
};

struct PipelineInputs {
    const Catalog* catalog = nullptr;
    ProjectProfile profile;
    AdoptionObjectives objectives;
    ResponseSet responses;
    PipelinePolicies policies;
    std::vector<InputDigest> digests;
    std::map<Id, double> hypothetical; // what-if overrides; empty for a plain run
};

// Validates every cross-reference up front, then runs stage 1, and on Go
// stages 2 and 3 over the full practice catalog.
DecisionReport run_pipeline(const PipelineInputs& inputs);

// Single-stage entry points; later stages consume prior-stage reports.
DecisionReport run_stage1(const Catalog& catalog, const ResponseSet& responses,
                          const PipelinePolicies& policies, std::vector<InputDigest> digests);
DecisionReport run_stage2(const Catalog& catalog, const ProjectProfile& profile,
                          const std::optional<DecisionReport>& stage1, bool assume_go,
                          std::vector<InputDigest> digests);
DecisionReport run_stage3(const Catalog& catalog, const AdoptionObjectives& objectives,
                          const ResponseSet& responses, const PipelinePolicies& policies,
                          const DecisionReport& stage2, std::vector<InputDigest> digests);

// Objectives, prerequisites (transitive, dependencies first), required
// characteristics, and every rule touching the practice, as plain text.
std::string explain_practice(const Catalog& catalog, const Id& practice);

} // namespace agilegate
