#include "core/suitability.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace agilegate {

using nlohmann::json;

ProjectProfile parse_profile(std::string_view json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("profile parse error: ") + e.what());
    }
    if (!document.is_object()) {
        throw Error(Errc::InvalidDocument, "profile document must be a JSON object");
    }
    for (const auto& [key, value] : document.items()) {
        if (key != "name" && key != "characteristics" && key != "qualities") {
            throw Error(Errc::InvalidDocument, "profile document: unexpected key '" + key + "'");
        }
    }

    ProjectProfile profile;
    if (document.contains("name")) {
        if (!document["name"].is_string()) {
            throw Error(Errc::InvalidDocument, "profile name must be a string");
        }
        profile.name = document["name"].get<std::string>();
    }
    auto read_ids = [&document](const char* key, std::set<Id>& out) {
        if (!document.contains(key)) {
            return;
        }
        if (!document[key].is_array()) {
            throw Error(Errc::InvalidDocument,
                        std::string("profile '") + key + "' must be an array");
        }
        for (const auto& element : document[key]) {
            if (!element.is_string()) {
                throw Error(Errc::InvalidDocument,
                            std::string("profile '") + key + "' entries must be strings");
            }
            out.insert(element.get<std::string>());
        }
    };
    read_ids("characteristics", profile.characteristics);
    read_ids("qualities", profile.qualities);
    return profile;
}

void check_profile(const Catalog& catalog, const ProjectProfile& profile) {
    for (const auto& id : profile.characteristics) {
        if (!catalog.find_system_characteristic(id)) {
            throw Error(Errc::UnknownProfileId,
                        "profile names unknown system characteristic '" + id + "'");
        }
    }
    for (const auto& id : profile.qualities) {
        if (!catalog.find_quality(id)) {
            throw Error(Errc::UnknownProfileId,
                        "profile names unknown desired quality '" + id + "'");
        }
    }
}

SuitabilityVerdict evaluate_practice_suitability(const Catalog& catalog,
                                                 const ProjectProfile& profile,
                                                 const Id& practice) {
    if (!catalog.find_practice(practice)) {
        throw Error(Errc::UnknownPractice, "unknown practice '" + practice + "'");
    }
    check_profile(catalog, profile);

    SuitabilityVerdict verdict;
    verdict.practice = practice;
    for (const auto& rule : catalog.conflict_rules) {
        if (rule.practice == practice && profile.characteristics.count(rule.characteristic)) {
            verdict.reasons.push_back({RuleKind::Conflict, rule.characteristic, rule.rationale});
        }
    }
    for (const auto& rule : catalog.preclusion_rules) {
        if (rule.practice == practice && profile.qualities.count(rule.quality)) {
            verdict.reasons.push_back({RuleKind::Preclusion, rule.quality, rule.rationale});
        }
    }
    std::sort(verdict.reasons.begin(), verdict.reasons.end(),
              [](const ReasonRef& a, const ReasonRef& b) {
                  if (a.kind != b.kind) {
                      return a.kind == RuleKind::Conflict;
                  }
                  return a.subject < b.subject;
              });
    verdict.suitable = verdict.reasons.empty();
    return verdict;
}

std::map<Id, SuitabilityVerdict> filter_practices(const Catalog& catalog,
                                                  const ProjectProfile& profile,
                                                  const std::set<Id>& practices) {
    std::map<Id, SuitabilityVerdict> verdicts;
    for (const auto& practice : practices) {
        try {
            verdicts.emplace(practice, evaluate_practice_suitability(catalog, profile, practice));
        } catch (const Error& e) {
            rethrow_annotated(e, "while filtering practice '" + practice + "'");
        }
    }
    return verdicts;
}

} // namespace agilegate
