#include "core/readiness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <queue>

namespace agilegate {

using nlohmann::json;

std::string to_string(ExclusionCause cause) {
    switch (cause) {
    case ExclusionCause::NotSuitable: return "not-suitable";
    case ExclusionCause::NotReady: return "not-ready";
    case ExclusionCause::PrerequisiteExcluded: return "prerequisite-excluded";
    }
    return "excluded";
}

std::string to_string(const Exclusion& exclusion) {
    std::string text;
    for (const auto& link : exclusion.chain) {
        if (!text.empty()) {
            text += " <- ";
        }
        text += link.practice;
        if (link.cause != ExclusionCause::PrerequisiteExcluded) {
            text += ": " + to_string(link.cause);
            if (link.cause == ExclusionCause::NotReady && !link.gaps.empty()) {
                text += " (";
                for (std::size_t i = 0; i < link.gaps.size(); ++i) {
                    if (i > 0) {
                        text += ", ";
                    }
                    char buffer[32];
                    std::snprintf(buffer, sizeof(buffer), "%.4f", link.gaps[i].shortfall);
                    text += "gap " + link.gaps[i].characteristic + " " + buffer;
                }
                text += ")";
            }
        }
    }
    return text;
}

bool CandidateSet::is_candidate(const Id& practice) const {
    return std::binary_search(candidates.begin(), candidates.end(), practice);
}

const PracticeReadiness* ReadinessReport::find(const Id& practice) const {
    for (const auto& entry : practices) {
        if (entry.practice == practice) {
            return &entry;
        }
    }
    return nullptr;
}

AdoptionObjectives parse_objectives(std::string_view json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("objectives parse error: ") + e.what());
    }
    if (!document.is_object()) {
        throw Error(Errc::InvalidDocument, "objectives document must be a JSON object");
    }
    for (const auto& [key, value] : document.items()) {
        if (key != "objectives") {
            throw Error(Errc::InvalidDocument, "objectives document: unexpected key '" + key + "'");
        }
    }
    if (!document.contains("objectives") || !document["objectives"].is_array()) {
        throw Error(Errc::InvalidDocument, "objectives document needs an \"objectives\" array");
    }
    AdoptionObjectives objectives;
    for (const auto& element : document["objectives"]) {
        if (!element.is_string()) {
            throw Error(Errc::InvalidDocument, "objective entries must be strings");
        }
        objectives.objectives.insert(element.get<std::string>());
    }
    if (objectives.objectives.empty()) {
        throw Error(Errc::InvalidDocument, "objectives document must name at least one objective");
    }
    return objectives;
}

namespace {

// Lexicographically-first dependency path from `from` to a practice outside
// the suitable set; empty when the whole closure is suitable.
std::vector<Id> path_to_unsuitable(const Catalog& catalog, const Id& from,
                                   const std::set<Id>& suitable) {
    const auto* practice = catalog.find_practice(from);
    if (!practice) {
        return {};
    }
    std::vector<Id> prerequisites = practice->prerequisites;
    std::sort(prerequisites.begin(), prerequisites.end());
    for (const auto& prerequisite : prerequisites) {
        if (!suitable.count(prerequisite)) {
            return {prerequisite};
        }
    }
    for (const auto& prerequisite : prerequisites) {
        auto tail = path_to_unsuitable(catalog, prerequisite, suitable);
        if (!tail.empty()) {
            tail.insert(tail.begin(), prerequisite);
            return tail;
        }
    }
    return {};
}

Exclusion make_prerequisite_chain(const Id& practice, const std::vector<Id>& path,
                                  ExclusionCause root_cause, std::vector<GapEntry> root_gaps = {}) {
    Exclusion exclusion;
    exclusion.practice = practice;
    Id current = practice;
    for (const auto& next : path) {
        exclusion.chain.push_back({current, ExclusionCause::PrerequisiteExcluded, next, {}});
        current = next;
    }
    exclusion.chain.push_back({current, root_cause, {}, std::move(root_gaps)});
    return exclusion;
}

// Kahn's algorithm over the prerequisite relation restricted to `members`,
// min-heap for the lexicographic tie-break. Prerequisites come out first.
std::vector<Id> topological_order(const Catalog& catalog, const std::set<Id>& members) {
    std::map<Id, int> pending;
    std::map<Id, std::vector<Id>> dependents;
    for (const auto& id : members) {
        const auto* practice = catalog.find_practice(id);
        int count = 0;
        if (practice) {
            for (const auto& prerequisite : practice->prerequisites) {
                if (members.count(prerequisite)) {
                    ++count;
                    dependents[prerequisite].push_back(id);
                }
            }
        }
        pending[id] = count;
    }

    std::priority_queue<Id, std::vector<Id>, std::greater<>> ready;
    for (const auto& [id, count] : pending) {
        if (count == 0) {
            ready.push(id);
        }
    }
    std::vector<Id> ordered;
    while (!ready.empty()) {
        const Id current = ready.top();
        ready.pop();
        ordered.push_back(current);
        for (const auto& dependent : dependents[current]) {
            if (--pending[dependent] == 0) {
                ready.push(dependent);
            }
        }
    }
    if (ordered.size() != members.size()) {
        throw Error(Errc::Internal, "practice set contains a prerequisite cycle");
    }
    return ordered;
}

} // namespace

CandidateSet select_candidates(const Catalog& catalog, const AdoptionObjectives& objectives,
                               const std::set<Id>& suitable) {
    if (objectives.objectives.empty()) {
        throw Error(Errc::InvalidArgument, "adoption objectives must be non-empty");
    }
    for (const auto& objective : objectives.objectives) {
        if (!catalog.find_objective(objective)) {
            throw Error(Errc::UnknownObjective, "unknown objective '" + objective + "'");
        }
    }
    for (const auto& practice : suitable) {
        if (!catalog.find_practice(practice)) {
            throw Error(Errc::UnknownPractice,
                        "suitable set names unknown practice '" + practice + "'");
        }
    }

    // Base set: suitable practices that serve at least one stated objective.
    std::vector<Id> base;
    for (const auto& practice : catalog.practices) {
        if (!suitable.count(practice.id)) {
            continue;
        }
        const bool serves = std::any_of(
            practice.objectives.begin(), practice.objectives.end(),
            [&objectives](const Id& o) { return objectives.objectives.count(o) > 0; });
        if (serves) {
            base.push_back(practice.id);
        }
    }
    std::sort(base.begin(), base.end());

    CandidateSet result;
    std::set<Id> included;
    std::set<Id> pulled;
    for (const auto& practice : base) {
        const auto path = path_to_unsuitable(catalog, practice, suitable);
        if (!path.empty()) {
            result.exclusions.push_back(
                make_prerequisite_chain(practice, path, ExclusionCause::NotSuitable));
            continue;
        }
        included.insert(practice);
        for (const auto& prerequisite : transitive_prerequisites(catalog, practice)) {
            pulled.insert(prerequisite);
        }
    }

    for (const auto& practice : included) {
        pulled.erase(practice);
    }
    std::set<Id> candidates = included;
    candidates.insert(pulled.begin(), pulled.end());

    result.candidates.assign(candidates.begin(), candidates.end());
    result.pulled_prerequisites.assign(pulled.begin(), pulled.end());
    std::sort(result.exclusions.begin(), result.exclusions.end(),
              [](const Exclusion& a, const Exclusion& b) { return a.practice < b.practice; });
    return result;
}

namespace {

ReadinessReport assess(const Catalog& catalog, const CandidateSet& candidates,
                       const ResponseSet& responses, const ReadinessPolicy& policy,
                       const std::map<Id, double>& hypothetical,
                       std::vector<std::string>* warnings) {
    if (policy.level() < 0.0 || policy.level() > 1.0) {
        throw Error(Errc::InvalidArgument, "readiness policy level must be in [0, 1]");
    }
    for (const auto& [id, value] : hypothetical) {
        if (!catalog.find_org_characteristic(id)) {
            throw Error(Errc::UnknownCharacteristic,
                        "what-if override names unknown organizational characteristic '" + id + "'");
        }
        if (value < 0.0 || value > 1.0) {
            throw Error(Errc::OutOfRangeDegree,
                        "what-if override for '" + id + "' must be in [0, 1]");
        }
    }

    const double level = policy.level();
    ReadinessReport report;
    report.policy = policy;

    for (const auto& candidate : candidates.candidates) {
        const auto* practice = catalog.find_practice(candidate);
        if (!practice) {
            throw Error(Errc::UnknownPractice,
                        "candidate set names unknown practice '" + candidate + "'");
        }

        PracticeReadiness entry;
        entry.practice = candidate;

        std::vector<RequiredCharacteristic> required = practice->required_characteristics;
        std::sort(required.begin(), required.end(),
                  [](const RequiredCharacteristic& a, const RequiredCharacteristic& b) {
                      return a.id < b.id;
                  });

        bool all_met = true;
        double minimum = 1.0;
        for (const auto& requirement : required) {
            CharacteristicReadiness characteristic;
            characteristic.characteristic = requirement.id;
            characteristic.required_level = level;

            const auto override_it = hypothetical.find(requirement.id);
            if (override_it != hypothetical.end()) {
                characteristic.degree = override_it->second;
                characteristic.overridden = true;
            } else {
                const auto* construct = catalog.find_org_characteristic(requirement.id);
                if (!construct) {
                    throw Error(Errc::UnknownCharacteristic,
                                "practice '" + candidate +
                                    "' requires unknown characteristic '" + requirement.id + "'");
                }
                try {
                    characteristic.degree = construct_degree(*construct, responses, warnings).value;
                } catch (const Error& e) {
                    rethrow_annotated(e, "readiness of practice '" + candidate + "'");
                }
            }

            const bool met = characteristic.degree >= level - kDegreeTolerance;
            characteristic.gap = met ? 0.0 : level - characteristic.degree;
            all_met = all_met && met;
            minimum = std::min(minimum, characteristic.degree);
            entry.characteristics.push_back(std::move(characteristic));
        }

        // A practice requiring nothing is vacuously ready; flagged so catalog
        // curators notice possibly incomplete data.
        entry.vacuous = required.empty();
        entry.readiness = required.empty() ? 1.0 : minimum;
        entry.ready = all_met;
        report.practices.push_back(std::move(entry));
    }
    return report;
}

} // namespace

ReadinessReport assess_readiness(const Catalog& catalog, const CandidateSet& candidates,
                                 const ResponseSet& responses, const ReadinessPolicy& policy,
                                 std::vector<std::string>* warnings) {
    return assess(catalog, candidates, responses, policy, {}, warnings);
}

ReadinessReport what_if(const Catalog& catalog, const CandidateSet& candidates,
                        const ResponseSet& responses, const ReadinessPolicy& policy,
                        const std::map<Id, double>& hypothetical,
                        std::vector<std::string>* warnings) {
    return assess(catalog, candidates, responses, policy, hypothetical, warnings);
}

AdoptionPlan build_adoption_plan(const Catalog& catalog, const CandidateSet& candidates,
                                 const ReadinessReport& readiness) {
    for (const auto& candidate : candidates.candidates) {
        if (!readiness.find(candidate)) {
            throw Error(Errc::InvalidArgument,
                        "readiness report does not cover candidate '" + candidate + "'");
        }
    }

    const std::set<Id> members(candidates.candidates.begin(), candidates.candidates.end());
    for (const auto& member : members) {
        const auto* practice = catalog.find_practice(member);
        if (!practice) {
            throw Error(Errc::UnknownPractice,
                        "candidate set names unknown practice '" + member + "'");
        }
        for (const auto& prerequisite : practice->prerequisites) {
            if (!members.count(prerequisite)) {
                throw Error(Errc::InvalidArgument,
                            "candidate set is not closed under prerequisites: '" + member +
                                "' needs '" + prerequisite + "'");
            }
        }
    }

    AdoptionPlan plan;
    plan.excluded = candidates.exclusions; // selection-time exclusions carry over

    std::map<Id, Exclusion> excluded;
    for (const auto& member : topological_order(catalog, members)) {
        const auto* entry = readiness.find(member);
        if (!entry->ready) {
            Exclusion exclusion;
            exclusion.practice = member;
            std::vector<GapEntry> gaps;
            for (const auto& characteristic : entry->characteristics) {
                if (characteristic.gap > 0.0) {
                    gaps.push_back({characteristic.characteristic, characteristic.gap});
                }
            }
            exclusion.chain.push_back({member, ExclusionCause::NotReady, {}, std::move(gaps)});
            excluded.emplace(member, std::move(exclusion));
            continue;
        }

        // Ready, but excluded anyway if some prerequisite fell out; cascade
        // through the lexicographically first broken one.
        const auto* practice = catalog.find_practice(member);
        std::vector<Id> prerequisites = practice->prerequisites;
        std::sort(prerequisites.begin(), prerequisites.end());
        const Exclusion* broken = nullptr;
        Id broken_id;
        for (const auto& prerequisite : prerequisites) {
            const auto it = excluded.find(prerequisite);
            if (it != excluded.end()) {
                broken = &it->second;
                broken_id = prerequisite;
                break;
            }
        }
        if (broken) {
            Exclusion exclusion;
            exclusion.practice = member;
            exclusion.chain.push_back(
                {member, ExclusionCause::PrerequisiteExcluded, broken_id, {}});
            exclusion.chain.insert(exclusion.chain.end(), broken->chain.begin(),
                                   broken->chain.end());
            excluded.emplace(member, std::move(exclusion));
            continue;
        }

        plan.selected.push_back(member);
    }

    for (auto& [id, exclusion] : excluded) {
        plan.excluded.push_back(std::move(exclusion));
    }
    std::sort(plan.excluded.begin(), plan.excluded.end(),
              [](const Exclusion& a, const Exclusion& b) { return a.practice < b.practice; });
    return plan;
}

} // namespace agilegate
