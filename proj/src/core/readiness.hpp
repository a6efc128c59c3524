#pragma once

// Stage 3: selects candidate practices from the adoption objectives plus
// their transitive prerequisites, scores organizational readiness per
// practice (weakest-link minimum over required characteristics), and builds
// the dependency-ordered adoption plan with reasoned exclusions.

#include <map>
#include <set>

#include "core/scoring.hpp"

namespace agilegate {

struct AdoptionObjectives {
    std::set<Id> objectives; // non-empty

    bool operator==(const AdoptionObjectives&) const = default;
};

struct ReadinessPolicy {
    enum class Mode { Strict, Threshold };

    Mode mode = Mode::Strict;
    double value = 1.0; // only read in Threshold mode

    // strict is equivalent to threshold(1.0)
    double level() const { return mode == Mode::Strict ? 1.0 : value; }

    bool operator==(const ReadinessPolicy&) const = default;
};

enum class ExclusionCause { NotSuitable, NotReady, PrerequisiteExcluded };

struct GapEntry {
    Id characteristic;
    double shortfall = 0.0; // policy level - degree, floored at 0

    bool operator==(const GapEntry&) const = default;
};

// One link of an exclusion chain. A chain walks the dependency path from the
// excluded practice down to its root cause: every intermediate link is
// PrerequisiteExcluded (via names the broken prerequisite) and the final
// link is NotSuitable or NotReady.
struct ChainLink {
    Id practice;
    ExclusionCause cause = ExclusionCause::NotSuitable;
    Id via;                    // PrerequisiteExcluded only
    std::vector<GapEntry> gaps; // NotReady only

    bool operator==(const ChainLink&) const = default;
};

struct Exclusion {
    Id practice;
    std::vector<ChainLink> chain;

    bool operator==(const Exclusion&) const = default;
};

std::string to_string(ExclusionCause cause);
std::string to_string(const Exclusion& exclusion); // "a <- b: not-suitable" style

struct CandidateSet {
    std::vector<Id> candidates;           // closed under prerequisites, sorted
    std::vector<Id> pulled_prerequisites; // dependency-induced subset, sorted
    std::vector<Exclusion> exclusions;    // objective-matched practices dropped here

    bool is_candidate(const Id& practice) const;

    bool operator==(const CandidateSet&) const = default;
};

struct CharacteristicReadiness {
    Id characteristic;
    double degree = 0.0;
    double required_level = 1.0;
    double gap = 0.0;
    bool overridden = false; // degree came from a what-if hypothetical

    bool operator==(const CharacteristicReadiness&) const = default;
};

struct PracticeReadiness {
    Id practice;
    double readiness = 1.0; // min over required characteristic degrees
    bool ready = false;
    bool vacuous = false; // no required characteristics listed in the catalog
    std::vector<CharacteristicReadiness> characteristics;

    bool operator==(const PracticeReadiness&) const = default;
};

struct ReadinessReport {
    ReadinessPolicy policy;
    std::vector<PracticeReadiness> practices; // sorted by practice id

    const PracticeReadiness* find(const Id& practice) const;

    bool operator==(const ReadinessReport&) const = default;
};

struct AdoptionPlan {
    std::vector<Id> selected; // prerequisites first, lexicographic tie-break
    std::vector<Exclusion> excluded;

    bool operator==(const AdoptionPlan&) const = default;
};

// Parses an objectives document. Throws ParseError / InvalidDocument.
AdoptionObjectives parse_objectives(std::string_view json_text);

// Base set: suitable practices serving at least one objective. Candidates:
// base set plus transitive prerequisites of its members. A practice whose
// prerequisite chain leaves the suitable set is excluded with a chain naming
// the root cause.
CandidateSet select_candidates(const Catalog& catalog, const AdoptionObjectives& objectives,
                               const std::set<Id>& suitable);

// Scores every candidate's required organizational characteristics and
// applies the policy level; readiness is the minimum characteristic degree
// (weakest link), 1.0 by convention for practices requiring nothing.
ReadinessReport assess_readiness(const Catalog& catalog, const CandidateSet& candidates,
                                 const ResponseSet& responses, const ReadinessPolicy& policy,
                                 std::vector<std::string>* warnings = nullptr);

// assess_readiness with the listed characteristics pinned to hypothetical
// degrees; overridden entries are marked in the report.
ReadinessReport what_if(const Catalog& catalog, const CandidateSet& candidates,
                        const ResponseSet& responses, const ReadinessPolicy& policy,
                        const std::map<Id, double>& hypothetical,
                        std::vector<std::string>* warnings = nullptr);

// Keeps the ready candidates whose whole prerequisite chain is also kept;
// everything else is excluded with a reason chain, cascading through
// dependents. Selection exclusions from the candidate set are carried over.
AdoptionPlan build_adoption_plan(const Catalog& catalog, const CandidateSet& candidates,
                                 const ReadinessReport& readiness);

} // namespace agilegate
