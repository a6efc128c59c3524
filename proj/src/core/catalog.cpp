#include "core/catalog.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace agilegate {

bool is_valid_identifier(std::string_view token) {
    if (token.empty()) {
        return false;
    }
    for (char c : token) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
        if (!ok) {
            return false;
        }
    }
    return true;
}

std::string to_string(Role role) {
    switch (role) {
    case Role::Manager: return "manager";
    case Role::Developer: return "developer";
    case Role::Assessor: return "assessor";
    }
    return "assessor";
}

std::string to_string(Scale scale) {
    return scale == Scale::Binary ? "binary" : "ordinal5";
}

std::optional<Role> role_from_string(std::string_view text) {
    if (text == "manager") return Role::Manager;
    if (text == "developer") return Role::Developer;
    if (text == "assessor") return Role::Assessor;
    return std::nullopt;
}

std::optional<Scale> scale_from_string(std::string_view text) {
    if (text == "binary") return Scale::Binary;
    if (text == "ordinal5") return Scale::Ordinal5;
    return std::nullopt;
}

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& entities, const Id& id) {
    for (const auto& entity : entities) {
        if (entity.id == id) {
            return &entity;
        }
    }
    return nullptr;
}

} // namespace

const AgilePractice* Catalog::find_practice(const Id& id) const {
    return find_by_id(practices, id);
}

const Objective* Catalog::find_objective(const Id& id) const {
    return find_by_id(objectives, id);
}

const MeasuredConstruct* Catalog::find_success_factor(const Id& id) const {
    return find_by_id(success_factors, id);
}

const MeasuredConstruct* Catalog::find_org_characteristic(const Id& id) const {
    return find_by_id(org_characteristics, id);
}

const SystemCharacteristic* Catalog::find_system_characteristic(const Id& id) const {
    return find_by_id(system_characteristics, id);
}

const DesiredQuality* Catalog::find_quality(const Id& id) const {
    return find_by_id(qualities, id);
}

const Indicator* Catalog::find_indicator(const Id& id) const {
    for (const auto* group : {&success_factors, &org_characteristics}) {
        for (const auto& construct : *group) {
            for (const auto& aspect : construct.aspects) {
                if (const auto* found = find_by_id(aspect.indicators, id)) {
                    return found;
                }
            }
        }
    }
    return nullptr;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::UnknownKey: return "unknown-key";
    case ViolationKind::TypeMismatch: return "type-mismatch";
    case ViolationKind::MissingField: return "missing-field";
    case ViolationKind::InvalidIdentifier: return "invalid-identifier";
    case ViolationKind::DuplicateId: return "duplicate-id";
    case ViolationKind::DanglingReference: return "dangling-reference";
    case ViolationKind::EmptyConstruct: return "empty-construct";
    case ViolationKind::EmptyAspect: return "empty-aspect";
    case ViolationKind::EmptyText: return "empty-text";
    case ViolationKind::NonPositiveWeight: return "non-positive-weight";
    case ViolationKind::SelfPrerequisite: return "self-prerequisite";
    case ViolationKind::PrerequisiteCycle: return "prerequisite-cycle";
    case ViolationKind::DuplicateRule: return "duplicate-rule";
    }
    return "violation";
}

std::string to_string(const Violation& violation) {
    std::string text = to_string(violation.kind) + ": " + violation.subject;
    if (!violation.detail.empty()) {
        text += " (" + violation.detail + ")";
    }
    return text;
}

CatalogValidationError::CatalogValidationError(std::vector<Violation> violations)
    : Error(Errc::InvalidCatalog, [&violations] {
          std::string message = "catalog validation failed with " +
                                std::to_string(violations.size()) + " violation(s)";
          for (const auto& v : violations) {
              message += "\n  - " + to_string(v);
          }
          return message;
      }()),
      violations_(std::move(violations)) {}

namespace {

class Validator {
public:
    explicit Validator(const Catalog& catalog) : catalog_(catalog) {}

    std::vector<Violation> run() {
        check_identifiers();
        check_duplicates();
        check_constructs();
        check_practice_fields();
        check_references();
        check_rules();
        check_prerequisite_graph();
        return std::move(violations_);
    }

private:
    void add(ViolationKind kind, std::string subject, std::string detail = "") {
        violations_.push_back({kind, std::move(subject), std::move(detail)});
    }

    void check_id(const Id& id, const std::string& where) {
        if (!is_valid_identifier(id)) {
            add(ViolationKind::InvalidIdentifier, where,
                "'" + id + "' is not a lowercase letters/digits/hyphens token");
        }
    }

    void check_identifiers() {
        for (const auto& p : catalog_.practices) check_id(p.id, "practice");
        for (const auto& o : catalog_.objectives) check_id(o.id, "objective");
        for (const auto& c : catalog_.system_characteristics) check_id(c.id, "system characteristic");
        for (const auto& q : catalog_.qualities) check_id(q.id, "quality");
        for_each_construct([this](const MeasuredConstruct& construct, const char* ns) {
            check_id(construct.id, ns);
            for (const auto& aspect : construct.aspects) {
                check_id(aspect.id, "aspect of " + construct.id);
                for (const auto& indicator : aspect.indicators) {
                    check_id(indicator.id, "indicator in " + construct.id + "/" + aspect.id);
                }
            }
        });
    }

    template <typename T>
    void check_namespace_dupes(const std::vector<T>& entities, const std::string& ns) {
        std::set<Id> seen;
        for (const auto& entity : entities) {
            if (!seen.insert(entity.id).second) {
                add(ViolationKind::DuplicateId, entity.id, "duplicated in namespace " + ns);
            }
        }
    }

    void check_duplicates() {
        check_namespace_dupes(catalog_.practices, "practice");
        check_namespace_dupes(catalog_.objectives, "objective");
        check_namespace_dupes(catalog_.success_factors, "success factor");
        check_namespace_dupes(catalog_.org_characteristics, "organizational characteristic");
        check_namespace_dupes(catalog_.system_characteristics, "system characteristic");
        check_namespace_dupes(catalog_.qualities, "quality");

        // Indicator ids are unique across the whole catalog.
        std::set<Id> indicators;
        for_each_construct([&](const MeasuredConstruct& construct, const char*) {
            std::set<Id> aspects;
            for (const auto& aspect : construct.aspects) {
                if (!aspects.insert(aspect.id).second) {
                    add(ViolationKind::DuplicateId, aspect.id,
                        "aspect duplicated within " + construct.id);
                }
                for (const auto& indicator : aspect.indicators) {
                    if (!indicators.insert(indicator.id).second) {
                        add(ViolationKind::DuplicateId, indicator.id,
                            "indicator ids must be unique across the catalog");
                    }
                }
            }
        });
    }

    void check_constructs() {
        for_each_construct([this](const MeasuredConstruct& construct, const char*) {
            if (construct.aspects.empty()) {
                add(ViolationKind::EmptyConstruct, construct.id, "construct has no aspects");
            }
            for (const auto& aspect : construct.aspects) {
                if (aspect.indicators.empty()) {
                    add(ViolationKind::EmptyAspect, aspect.id,
                        "aspect of " + construct.id + " has no indicators");
                }
                if (aspect.weight <= 0.0) {
                    add(ViolationKind::NonPositiveWeight, aspect.id,
                        "aspect weight must be > 0");
                }
                for (const auto& indicator : aspect.indicators) {
                    if (indicator.weight <= 0.0) {
                        add(ViolationKind::NonPositiveWeight, indicator.id,
                            "indicator weight must be > 0");
                    }
                    if (indicator.question.empty()) {
                        add(ViolationKind::EmptyText, indicator.id,
                            "indicator question must be non-empty");
                    }
                }
            }
        });
    }

    void check_practice_fields() {
        for (const auto& practice : catalog_.practices) {
            for (const auto& required : practice.required_characteristics) {
                if (required.weight <= 0.0) {
                    add(ViolationKind::NonPositiveWeight,
                        practice.id + "/" + required.id,
                        "required-characteristic weight must be > 0");
                }
            }
        }
    }

    void check_references() {
        for (const auto& practice : catalog_.practices) {
            for (const auto& objective : practice.objectives) {
                if (!catalog_.find_objective(objective)) {
                    add(ViolationKind::DanglingReference, practice.id,
                        "objective '" + objective + "' is not declared");
                }
            }
            for (const auto& prerequisite : practice.prerequisites) {
                if (!catalog_.find_practice(prerequisite)) {
                    add(ViolationKind::DanglingReference, practice.id,
                        "prerequisite '" + prerequisite + "' is not a declared practice");
                }
            }
            for (const auto& required : practice.required_characteristics) {
                if (!catalog_.find_org_characteristic(required.id)) {
                    add(ViolationKind::DanglingReference, practice.id,
                        "required characteristic '" + required.id +
                            "' is not a declared organizational characteristic");
                }
            }
        }
    }

    void check_rules() {
        std::set<std::pair<Id, Id>> conflict_pairs;
        for (const auto& rule : catalog_.conflict_rules) {
            const std::string subject = rule.practice + "/" + rule.characteristic;
            if (!catalog_.find_practice(rule.practice)) {
                add(ViolationKind::DanglingReference, subject,
                    "conflict rule names unknown practice '" + rule.practice + "'");
            }
            if (!catalog_.find_system_characteristic(rule.characteristic)) {
                add(ViolationKind::DanglingReference, subject,
                    "conflict rule names unknown characteristic '" + rule.characteristic + "'");
            }
            if (rule.rationale.empty()) {
                add(ViolationKind::EmptyText, subject, "conflict rule rationale must be non-empty");
            }
            if (!conflict_pairs.insert({rule.practice, rule.characteristic}).second) {
                add(ViolationKind::DuplicateRule, subject, "conflict rule pair duplicated");
            }
        }
        std::set<std::pair<Id, Id>> preclusion_pairs;
        for (const auto& rule : catalog_.preclusion_rules) {
            const std::string subject = rule.practice + "/" + rule.quality;
            if (!catalog_.find_practice(rule.practice)) {
                add(ViolationKind::DanglingReference, subject,
                    "preclusion rule names unknown practice '" + rule.practice + "'");
            }
            if (!catalog_.find_quality(rule.quality)) {
                add(ViolationKind::DanglingReference, subject,
                    "preclusion rule names unknown quality '" + rule.quality + "'");
            }
            if (rule.rationale.empty()) {
                add(ViolationKind::EmptyText, subject, "preclusion rule rationale must be non-empty");
            }
            if (!preclusion_pairs.insert({rule.practice, rule.quality}).second) {
                add(ViolationKind::DuplicateRule, subject, "preclusion rule pair duplicated");
            }
        }
    }

    // Tarjan over the prerequisite relation; every non-trivial strongly
    // connected component is reported once, members sorted.
    void check_prerequisite_graph() {
        for (const auto& practice : catalog_.practices) {
            for (const auto& prerequisite : practice.prerequisites) {
                if (prerequisite == practice.id) {
                    add(ViolationKind::SelfPrerequisite, practice.id,
                        "practice lists itself as a prerequisite");
                }
            }
        }

        std::map<Id, int> index, lowlink;
        std::vector<Id> stack;
        std::set<Id> on_stack;
        int next_index = 0;

        auto strongconnect = [&](auto&& self, const Id& node) -> void {
            index[node] = lowlink[node] = next_index++;
            stack.push_back(node);
            on_stack.insert(node);

            if (const auto* practice = catalog_.find_practice(node)) {
                for (const auto& next : practice->prerequisites) {
                    if (next == node || !catalog_.find_practice(next)) {
                        continue;
                    }
                    if (!index.count(next)) {
                        self(self, next);
                        lowlink[node] = std::min(lowlink[node], lowlink[next]);
                    } else if (on_stack.count(next)) {
                        lowlink[node] = std::min(lowlink[node], index[next]);
                    }
                }
            }

            if (lowlink[node] == index[node]) {
                std::vector<Id> component;
                Id member;
                do {
                    member = stack.back();
                    stack.pop_back();
                    on_stack.erase(member);
                    component.push_back(member);
                } while (member != node);
                if (component.size() > 1) {
                    std::sort(component.begin(), component.end());
                    std::string members;
                    for (const auto& id : component) {
                        members += (members.empty() ? "" : ", ") + id;
                    }
                    add(ViolationKind::PrerequisiteCycle, "{" + members + "}",
                        "prerequisite relation must be acyclic");
                }
            }
        };

        for (const auto& practice : catalog_.practices) {
            if (!index.count(practice.id)) {
                strongconnect(strongconnect, practice.id);
            }
        }
    }

    template <typename Fn>
    void for_each_construct(Fn&& fn) {
        for (const auto& construct : catalog_.success_factors) {
            fn(construct, "success factor");
        }
        for (const auto& construct : catalog_.org_characteristics) {
            fn(construct, "organizational characteristic");
        }
    }

    const Catalog& catalog_;
    std::vector<Violation> violations_;
};

} // namespace

std::vector<Violation> validate_catalog(const Catalog& catalog) {
    return Validator(catalog).run();
}

std::vector<Id> transitive_prerequisites(const Catalog& catalog, const Id& practice) {
    const auto* root = catalog.find_practice(practice);
    if (!root) {
        throw Error(Errc::UnknownPractice, "unknown practice '" + practice + "'");
    }

    // Reachable set, excluding the queried practice itself.
    std::set<Id> reachable;
    std::vector<Id> frontier{practice};
    while (!frontier.empty()) {
        const Id current = frontier.back();
        frontier.pop_back();
        const auto* node = catalog.find_practice(current);
        if (!node) {
            continue;
        }
        for (const auto& prerequisite : node->prerequisites) {
            if (prerequisite != practice && reachable.insert(prerequisite).second) {
                frontier.push_back(prerequisite);
            }
        }
    }

    // Kahn over the reachable subgraph; min-heap gives the lexicographic
    // tie-break, dependencies come out before their dependents.
    std::map<Id, int> pending;
    for (const auto& id : reachable) {
        int count = 0;
        if (const auto* node = catalog.find_practice(id)) {
            for (const auto& prerequisite : node->prerequisites) {
                if (reachable.count(prerequisite)) {
                    ++count;
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
        for (const auto& id : reachable) {
            if (id == current) {
                continue;
            }
            const auto* node = catalog.find_practice(id);
            if (!node) {
                continue;
            }
            for (const auto& prerequisite : node->prerequisites) {
                if (prerequisite == current && --pending[id] == 0) {
                    ready.push(id);
                }
            }
        }
    }

    if (ordered.size() != reachable.size()) {
        throw Error(Errc::Internal,
                    "prerequisite graph of '" + practice + "' contains a cycle");
    }
    return ordered;
}

} // namespace agilegate
