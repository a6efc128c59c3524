#pragma once

// Stage 2: discards practices that conflict with a system/development
// characteristic of the project or preclude a desired system quality.
// Rules are binary and explicit; absence of a rule means no conflict.

#include <map>
#include <set>

#include "core/catalog.hpp"

namespace agilegate {

struct ProjectProfile {
    std::string name;
    std::set<Id> characteristics;
    std::set<Id> qualities;

    bool operator==(const ProjectProfile&) const = default;
};

enum class RuleKind { Conflict, Preclusion };

// One matched rule: the characteristic (or quality) it fired on plus the
// curated rationale, so reports can replay the reasoning.
struct ReasonRef {
    RuleKind kind = RuleKind::Conflict;
    Id subject; // characteristic id for conflicts, quality id for preclusions
    std::string rationale;

    bool operator==(const ReasonRef&) const = default;
};

struct SuitabilityVerdict {
    Id practice;
    bool suitable = true;
    std::vector<ReasonRef> reasons; // non-empty iff discarded

    bool operator==(const SuitabilityVerdict&) const = default;
};

// Parses a profile document. Throws ParseError / InvalidDocument.
ProjectProfile parse_profile(std::string_view json_text);

// Throws UnknownProfileId when a profile id does not resolve.
void check_profile(const Catalog& catalog, const ProjectProfile& profile);

// Discarded iff some conflict rule matches a profile characteristic or some
// preclusion rule matches a desired quality; every matched rule is reported.
SuitabilityVerdict evaluate_practice_suitability(const Catalog& catalog,
                                                 const ProjectProfile& profile,
                                                 const Id& practice);

// One verdict per input practice.
std::map<Id, SuitabilityVerdict> filter_practices(const Catalog& catalog,
                                                  const ProjectProfile& profile,
                                                  const std::set<Id>& practices);

} // namespace agilegate
