#pragma once

// Knowledge base consumed by all three assessment stages: practices,
// objectives, measured constructs (success factors and organizational
// characteristics), system characteristics, desired qualities, and the
// conflict/preclusion rule sets. Immutable after load; every operation
// here is a pure function of its inputs.

#include <optional>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace agilegate {

using Id = std::string;

// Lowercase token of letters, digits, and hyphens; non-empty.
bool is_valid_identifier(std::string_view token);

enum class Role { Manager, Developer, Assessor };
enum class Scale { Binary, Ordinal5 };
enum class ConstructKind { SuccessFactor, OrgCharacteristic };

std::string to_string(Role role);
std::string to_string(Scale scale);
std::optional<Role> role_from_string(std::string_view text);
std::optional<Scale> scale_from_string(std::string_view text);

struct Indicator {
    Id id;
    std::string question;
    Role respondent_role = Role::Assessor;
    Scale scale = Scale::Binary;
    double weight = 1.0;
    bool allows_na = false;

    bool operator==(const Indicator&) const = default;
};

struct Aspect {
    Id id;
    std::string name;
    double weight = 1.0;
    std::vector<Indicator> indicators;

    bool operator==(const Aspect&) const = default;
};

// Shared shape for success factors and organizational characteristics:
// both are assessed through aspects backed by indicator questions.
struct MeasuredConstruct {
    Id id;
    std::string name;
    ConstructKind kind = ConstructKind::SuccessFactor;
    std::vector<Aspect> aspects;

    bool operator==(const MeasuredConstruct&) const = default;
};

struct RequiredCharacteristic {
    Id id;
    double weight = 1.0;

    bool operator==(const RequiredCharacteristic&) const = default;
};

struct AgilePractice {
    Id id;
    std::string name;
    std::string description;
    std::vector<Id> objectives;
    std::vector<Id> prerequisites;
    std::vector<RequiredCharacteristic> required_characteristics;

    bool operator==(const AgilePractice&) const = default;
};

struct NamedEntity {
    Id id;
    std::string name;
    std::string description;

    bool operator==(const NamedEntity&) const = default;
};

using Objective = NamedEntity;
using SystemCharacteristic = NamedEntity;
using DesiredQuality = NamedEntity;

struct ConflictRule {
    Id practice;
    Id characteristic;
    std::string rationale;

    bool operator==(const ConflictRule&) const = default;
};

struct PreclusionRule {
    Id practice;
    Id quality;
    std::string rationale;

    bool operator==(const PreclusionRule&) const = default;
};

struct Catalog {
    std::vector<AgilePractice> practices;
    std::vector<Objective> objectives;
    std::vector<MeasuredConstruct> success_factors;
    std::vector<MeasuredConstruct> org_characteristics;
    std::vector<SystemCharacteristic> system_characteristics;
    std::vector<DesiredQuality> qualities;
    std::vector<ConflictRule> conflict_rules;
    std::vector<PreclusionRule> preclusion_rules;

    bool operator==(const Catalog&) const = default;

    const AgilePractice* find_practice(const Id& id) const;
    const Objective* find_objective(const Id& id) const;
    const MeasuredConstruct* find_success_factor(const Id& id) const;
    const MeasuredConstruct* find_org_characteristic(const Id& id) const;
    const SystemCharacteristic* find_system_characteristic(const Id& id) const;
    const DesiredQuality* find_quality(const Id& id) const;
    const Indicator* find_indicator(const Id& id) const;
};

enum class ViolationKind {
    UnknownKey,
    TypeMismatch,
    MissingField,
    InvalidIdentifier,
    DuplicateId,
    DanglingReference,
    EmptyConstruct,    // construct with no aspects
    EmptyAspect,       // aspect with no indicators
    EmptyText,         // required text field (question, rationale) empty
    NonPositiveWeight,
    SelfPrerequisite,
    PrerequisiteCycle,
    DuplicateRule,
};

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string subject; // id or JSON path of the offending entity
    std::string detail;

    bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& violation);

// Thrown by load_catalog when the document parses but the catalog breaks
// invariants; carries every violation found, not just the first.
class CatalogValidationError : public Error {
public:
    explicit CatalogValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

// Parses and fully validates a catalog document (UTF-8 JSON).
// Throws Error(Errc::ParseError) with line/column on malformed JSON and
// CatalogValidationError when any invariant is broken.
Catalog load_catalog(std::string_view json_text);

// Checks every catalog invariant: identifier syntax, duplicate ids,
// referential integrity, empty aspects/constructs, non-positive weights,
// empty rule rationales, self-prerequisites and prerequisite cycles.
// Empty result iff the catalog is valid.
std::vector<Violation> validate_catalog(const Catalog& catalog);

// All practices reachable through the prerequisite relation, excluding the
// queried practice, dependencies before dependents, lexicographic tie-break.
std::vector<Id> transitive_prerequisites(const Catalog& catalog, const Id& practice);

// Deterministic serialization; load_catalog(catalog_to_json(c)) == c.
std::string catalog_to_json(const Catalog& catalog);

} // namespace agilegate
