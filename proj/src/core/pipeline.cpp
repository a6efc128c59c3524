#include "core/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>

namespace agilegate {

using nlohmann::json;

PipelinePolicies parse_policies(std::string_view json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("policies parse error: ") + e.what());
    }
    if (!document.is_object()) {
        throw Error(Errc::InvalidDocument, "policies document must be a JSON object");
    }
    for (const auto& [key, value] : document.items()) {
        if (key != "gate" && key != "readiness") {
            throw Error(Errc::InvalidDocument, "policies document: unexpected key '" + key + "'");
        }
    }

    PipelinePolicies policies;
    if (document.contains("gate")) {
        const auto& gate = document["gate"];
        if (!gate.is_object()) {
            throw Error(Errc::InvalidDocument, "gate policy must be an object");
        }
        for (const auto& [key, value] : gate.items()) {
            if (key != "default_threshold" && key != "overrides") {
                throw Error(Errc::InvalidDocument, "gate policy: unexpected key '" + key + "'");
            }
        }
        if (gate.contains("default_threshold")) {
            if (!gate["default_threshold"].is_number()) {
                throw Error(Errc::InvalidDocument, "gate default_threshold must be a number");
            }
            policies.gate.default_threshold = gate["default_threshold"].get<double>();
        }
        if (gate.contains("overrides")) {
            if (!gate["overrides"].is_object()) {
                throw Error(Errc::InvalidDocument, "gate overrides must be an object");
            }
            for (const auto& [factor, threshold] : gate["overrides"].items()) {
                if (!threshold.is_number()) {
                    throw Error(Errc::InvalidDocument,
                                "gate override for '" + factor + "' must be a number");
                }
                policies.gate.overrides[factor] = threshold.get<double>();
            }
        }
        if (policies.gate.default_threshold < 0.0 || policies.gate.default_threshold > 1.0) {
            throw Error(Errc::InvalidDocument, "gate default_threshold must be in [0, 1]");
        }
        for (const auto& [factor, threshold] : policies.gate.overrides) {
            if (threshold < 0.0 || threshold > 1.0) {
                throw Error(Errc::InvalidDocument,
                            "gate override for '" + factor + "' must be in [0, 1]");
            }
        }
    }
    if (document.contains("readiness")) {
        const auto& readiness = document["readiness"];
        if (!readiness.is_object()) {
            throw Error(Errc::InvalidDocument, "readiness policy must be an object");
        }
        for (const auto& [key, value] : readiness.items()) {
            if (key != "mode" && key != "value") {
                throw Error(Errc::InvalidDocument,
                            "readiness policy: unexpected key '" + key + "'");
            }
        }
        if (!readiness.contains("mode") || !readiness["mode"].is_string()) {
            throw Error(Errc::InvalidDocument, "readiness policy needs a string \"mode\"");
        }
        const std::string mode = readiness["mode"].get<std::string>();
        if (mode == "strict") {
            policies.readiness.mode = ReadinessPolicy::Mode::Strict;
            policies.readiness.value = 1.0;
            if (readiness.contains("value")) {
                throw Error(Errc::InvalidDocument, "strict readiness policy takes no \"value\"");
            }
        } else if (mode == "threshold") {
            policies.readiness.mode = ReadinessPolicy::Mode::Threshold;
            if (!readiness.contains("value") || !readiness["value"].is_number()) {
                throw Error(Errc::InvalidDocument,
                            "threshold readiness policy needs a numeric \"value\"");
            }
            policies.readiness.value = readiness["value"].get<double>();
            if (policies.readiness.value < 0.0 || policies.readiness.value > 1.0) {
                throw Error(Errc::InvalidDocument, "readiness threshold must be in [0, 1]");
            }
        } else {
            throw Error(Errc::InvalidDocument,
                        "readiness mode must be \"strict\" or \"threshold\"");
        }
    }
    return policies;
}

std::string content_digest(std::string_view bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016" PRIx64, hash);
    return buffer;
}

InputDigest make_digest(std::string kind, std::string_view bytes) {
    return {std::move(kind), content_digest(bytes)};
}

namespace {

std::vector<std::string> standard_notes() {
    return {
        "gate boundary is closed: a degree equal to its threshold passes",
        "dependency-induced candidates must pass stage-2 suitability before entering stage 3",
    };
}

DecisionReport base_report(std::vector<InputDigest> digests, const PipelinePolicies& policies) {
    DecisionReport report;
    report.tool = std::string(kToolName) + " " + kToolVersion;
    report.inputs = std::move(digests);
    report.policies = policies;
    report.notes = standard_notes();
    return report;
}

void check_gate_policy(const Catalog& catalog, const GatePolicy& policy) {
    for (const auto& [factor, threshold] : policy.overrides) {
        if (!catalog.find_success_factor(factor)) {
            throw Error(Errc::UnknownFactor,
                        "gate policy override names unknown success factor '" + factor + "'");
        }
        if (threshold < 0.0 || threshold > 1.0) {
            throw Error(Errc::InvalidArgument,
                        "gate override for '" + factor + "' must be in [0, 1]");
        }
    }
    if (policy.default_threshold < 0.0 || policy.default_threshold > 1.0) {
        throw Error(Errc::InvalidArgument, "gate default threshold must be in [0, 1]");
    }
}

void check_objectives(const Catalog& catalog, const AdoptionObjectives& objectives) {
    if (objectives.objectives.empty()) {
        throw Error(Errc::InvalidArgument, "adoption objectives must be non-empty");
    }
    for (const auto& objective : objectives.objectives) {
        if (!catalog.find_objective(objective)) {
            throw Error(Errc::UnknownObjective, "unknown objective '" + objective + "'");
        }
    }
}

void check_hypothetical(const Catalog& catalog, const std::map<Id, double>& hypothetical) {
    for (const auto& [id, value] : hypothetical) {
        if (!catalog.find_org_characteristic(id)) {
            throw Error(Errc::UnknownCharacteristic,
                        "what-if override names unknown organizational characteristic '" + id +
                            "'");
        }
        if (value < 0.0 || value > 1.0) {
            throw Error(Errc::OutOfRangeDegree,
                        "what-if override for '" + id + "' must be in [0, 1]");
        }
    }
}

GateDecision gate_stage(const Catalog& catalog, const ResponseSet& responses,
                        const GatePolicy& policy) {
    std::map<Id, Degree> degrees;
    for (const auto& factor : catalog.success_factors) {
        try {
            degrees[factor.id] = construct_degree(factor, responses);
        } catch (const Error& e) {
            rethrow_annotated(e, "stage 1, success factor '" + factor.id + "'");
        }
    }
    try {
        return decide_go_nogo(degrees, policy);
    } catch (const Error& e) {
        rethrow_annotated(e, "stage 1");
    }
}

std::vector<SuitabilityVerdict> suitability_stage(const Catalog& catalog,
                                                  const ProjectProfile& profile) {
    std::set<Id> all;
    for (const auto& practice : catalog.practices) {
        all.insert(practice.id);
    }
    try {
        std::vector<SuitabilityVerdict> verdicts;
        for (auto& [id, verdict] : filter_practices(catalog, profile, all)) {
            verdicts.push_back(std::move(verdict));
        }
        return verdicts;
    } catch (const Error& e) {
        rethrow_annotated(e, "stage 2");
    }
}

std::set<Id> suitable_ids(const std::vector<SuitabilityVerdict>& verdicts) {
    std::set<Id> suitable;
    for (const auto& verdict : verdicts) {
        if (verdict.suitable) {
            suitable.insert(verdict.practice);
        }
    }
    return suitable;
}

void stage3_into(DecisionReport& report, const Catalog& catalog,
                 const AdoptionObjectives& objectives, const ResponseSet& responses,
                 const ReadinessPolicy& policy, const std::map<Id, double>& hypothetical,
                 const std::set<Id>& suitable) {
    try {
        ReadinessSection section;
        section.objectives.assign(objectives.objectives.begin(), objectives.objectives.end());
        section.candidates = select_candidates(catalog, objectives, suitable);
        section.report =
            what_if(catalog, section.candidates, responses, policy, hypothetical, nullptr);
        report.plan = build_adoption_plan(catalog, section.candidates, section.report);
        report.readiness = std::move(section);
    } catch (const Error& e) {
        rethrow_annotated(e, "stage 3");
    }
}

} // namespace

DecisionReport run_pipeline(const PipelineInputs& inputs) {
    if (!inputs.catalog) {
        throw Error(Errc::InvalidArgument, "pipeline needs a catalog");
    }
    const Catalog& catalog = *inputs.catalog;

    // Input validation precedes every stage.
    check_profile(catalog, inputs.profile);
    check_objectives(catalog, inputs.objectives);
    check_gate_policy(catalog, inputs.policies.gate);
    check_hypothetical(catalog, inputs.hypothetical);
    std::vector<std::string> warnings = check_responses(catalog, inputs.responses);

    DecisionReport report = base_report(inputs.digests, inputs.policies);
    report.warnings = std::move(warnings);
    report.overrides = inputs.hypothetical;

    report.gate = gate_stage(catalog, inputs.responses, inputs.policies.gate);
    if (report.gate->verdict == Verdict::NoGo) {
        report.suitability_skip_reason = kSkipNoGo;
        report.readiness_skip_reason = kSkipNoGo;
        report.plan_skip_reason = kSkipNoGo;
        return report;
    }

    report.suitability = suitability_stage(catalog, inputs.profile);
    stage3_into(report, catalog, inputs.objectives, inputs.responses, inputs.policies.readiness,
                inputs.hypothetical, suitable_ids(*report.suitability));
    return report;
}

DecisionReport run_stage1(const Catalog& catalog, const ResponseSet& responses,
                          const PipelinePolicies& policies, std::vector<InputDigest> digests) {
    check_gate_policy(catalog, policies.gate);
    std::vector<std::string> warnings = check_responses(catalog, responses);

    DecisionReport report = base_report(std::move(digests), policies);
    report.warnings = std::move(warnings);
    report.gate = gate_stage(catalog, responses, policies.gate);

    const bool nogo = report.gate->verdict == Verdict::NoGo;
    report.suitability_skip_reason = nogo ? kSkipNoGo : kSkipNotRequested;
    report.readiness_skip_reason = nogo ? kSkipNoGo : kSkipNotRequested;
    report.plan_skip_reason = nogo ? kSkipNoGo : kSkipNotRequested;
    return report;
}

DecisionReport run_stage2(const Catalog& catalog, const ProjectProfile& profile,
                          const std::optional<DecisionReport>& stage1, bool assume_go,
                          std::vector<InputDigest> digests) {
    check_profile(catalog, profile);
    if (!stage1 && !assume_go) {
        throw Error(Errc::InvalidArgument,
                    "stage 2 needs a stage-1 report or an explicit go assumption");
    }

    DecisionReport report =
        base_report(std::move(digests), stage1 ? stage1->policies : PipelinePolicies{});
    if (stage1) {
        report.gate_status = stage1->gate_status;
        report.gate = stage1->gate;
        report.warnings = stage1->warnings;
    } else {
        report.gate_status = GateStatus::Assumed;
    }

    if (report.gate && report.gate->verdict == Verdict::NoGo) {
        report.suitability_skip_reason = kSkipNoGo;
        report.readiness_skip_reason = kSkipNoGo;
        report.plan_skip_reason = kSkipNoGo;
        return report;
    }

    report.suitability = suitability_stage(catalog, profile);
    report.readiness_skip_reason = kSkipNotRequested;
    report.plan_skip_reason = kSkipNotRequested;
    return report;
}

DecisionReport run_stage3(const Catalog& catalog, const AdoptionObjectives& objectives,
                          const ResponseSet& responses, const PipelinePolicies& policies,
                          const DecisionReport& stage2, std::vector<InputDigest> digests) {
    check_objectives(catalog, objectives);
    check_gate_policy(catalog, policies.gate);
    std::vector<std::string> warnings = check_responses(catalog, responses);

    if (!stage2.suitability) {
        throw Error(Errc::InvalidArgument,
                    "stage-2 report carries no suitability results (skipped: " +
                        stage2.suitability_skip_reason + ")");
    }
    for (const auto& verdict : *stage2.suitability) {
        if (!catalog.find_practice(verdict.practice)) {
            throw Error(Errc::UnknownPractice,
                        "stage-2 report names practice '" + verdict.practice +
                            "' missing from this catalog");
        }
    }

    DecisionReport report = base_report(std::move(digests), policies);
    report.warnings = std::move(warnings);
    report.gate_status = stage2.gate_status;
    report.gate = stage2.gate;
    report.suitability = stage2.suitability;

    stage3_into(report, catalog, objectives, responses, policies.readiness, {},
                suitable_ids(*report.suitability));
    return report;
}

std::string explain_practice(const Catalog& catalog, const Id& practice) {
    const auto* entry = catalog.find_practice(practice);
    if (!entry) {
        throw Error(Errc::UnknownPractice, "unknown practice '" + practice + "'");
    }

    std::string text;
    text += "practice: " + entry->id + "\n";
    text += "name: " + entry->name + "\n";
    if (!entry->description.empty()) {
        text += "description: " + entry->description + "\n";
    }

    text += "objectives:";
    if (entry->objectives.empty()) {
        text += " (none)";
    }
    text += "\n";
    std::vector<Id> objectives = entry->objectives;
    std::sort(objectives.begin(), objectives.end());
    for (const auto& objective : objectives) {
        const auto* named = catalog.find_objective(objective);
        text += "  - " + objective + (named ? " (" + named->name + ")" : "") + "\n";
    }

    const auto prerequisites = transitive_prerequisites(catalog, practice);
    text += "prerequisites (transitive, dependencies first):";
    if (prerequisites.empty()) {
        text += " (none)";
    }
    text += "\n";
    for (const auto& prerequisite : prerequisites) {
        text += "  - " + prerequisite + "\n";
    }

    text += "required organizational characteristics:";
    if (entry->required_characteristics.empty()) {
        text += " (none)";
    }
    text += "\n";
    std::vector<RequiredCharacteristic> required = entry->required_characteristics;
    std::sort(required.begin(), required.end(),
              [](const RequiredCharacteristic& a, const RequiredCharacteristic& b) {
                  return a.id < b.id;
              });
    for (const auto& requirement : required) {
        char weight[32];
        std::snprintf(weight, sizeof(weight), "%g", requirement.weight);
        text += "  - " + requirement.id + " (weight " + weight + ")\n";
    }

    std::string rules;
    for (const auto& rule : catalog.conflict_rules) {
        if (rule.practice == practice) {
            rules += "  - conflicts with characteristic " + rule.characteristic + ": " +
                     rule.rationale + "\n";
        }
    }
    for (const auto& rule : catalog.preclusion_rules) {
        if (rule.practice == practice) {
            rules += "  - precludes quality " + rule.quality + ": " + rule.rationale + "\n";
        }
    }
    text += "conflict/preclusion rules:";
    text += rules.empty() ? " (none)\n" : "\n" + rules;
    return text;
}

} // namespace agilegate
