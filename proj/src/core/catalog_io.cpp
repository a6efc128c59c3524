#include "core/catalog.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace agilegate {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// Line/column of a byte offset, 1-based, for parse diagnostics.
std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

class DocumentReader {
public:
    explicit DocumentReader(std::vector<Violation>& violations) : violations_(violations) {}

    void expect_keys(const json& object, const std::string& where,
                     std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : object.items()) {
            if (std::find_if(allowed.begin(), allowed.end(),
                             [&key](const char* k) { return key == k; }) == allowed.end()) {
                add(ViolationKind::UnknownKey, where, "unexpected key '" + key + "'");
            }
        }
    }

    std::string require_string(const json& object, const std::string& where, const char* key) {
        if (!object.contains(key)) {
            add(ViolationKind::MissingField, where, std::string("missing '") + key + "'");
            return {};
        }
        if (!object[key].is_string()) {
            add(ViolationKind::TypeMismatch, where, std::string("'") + key + "' must be a string");
            return {};
        }
        return object[key].get<std::string>();
    }

    std::string optional_string(const json& object, const std::string& where, const char* key) {
        if (!object.contains(key)) {
            return {};
        }
        if (!object[key].is_string()) {
            add(ViolationKind::TypeMismatch, where, std::string("'") + key + "' must be a string");
            return {};
        }
        return object[key].get<std::string>();
    }

    double optional_weight(const json& object, const std::string& where) {
        if (!object.contains("weight")) {
            return 1.0;
        }
        if (!object["weight"].is_number()) {
            add(ViolationKind::TypeMismatch, where, "'weight' must be a number");
            return 1.0;
        }
        return object["weight"].get<double>();
    }

    bool optional_bool(const json& object, const std::string& where, const char* key) {
        if (!object.contains(key)) {
            return false;
        }
        if (!object[key].is_boolean()) {
            add(ViolationKind::TypeMismatch, where, std::string("'") + key + "' must be a boolean");
            return false;
        }
        return object[key].get<bool>();
    }

    std::vector<Id> optional_id_array(const json& object, const std::string& where, const char* key) {
        std::vector<Id> ids;
        if (!object.contains(key)) {
            return ids;
        }
        if (!object[key].is_array()) {
            add(ViolationKind::TypeMismatch, where, std::string("'") + key + "' must be an array");
            return ids;
        }
        for (const auto& element : object[key]) {
            if (!element.is_string()) {
                add(ViolationKind::TypeMismatch, where,
                    std::string("'") + key + "' entries must be strings");
                continue;
            }
            const Id id = element.get<std::string>();
            if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
                ids.push_back(id); // treated as a set; repeated entries collapse
            }
        }
        return ids;
    }

    void add(ViolationKind kind, std::string subject, std::string detail) {
        violations_.push_back({kind, std::move(subject), std::move(detail)});
    }

    // For building diagnostic labels; never reports.
    static std::string peek_string(const json& object, const char* key) {
        if (object.contains(key) && object[key].is_string()) {
            return object[key].get<std::string>();
        }
        return {};
    }

private:
    std::vector<Violation>& violations_;
};

Indicator read_indicator(DocumentReader& reader, const json& object, const std::string& where) {
    Indicator indicator;
    reader.expect_keys(object, where,
                       {"id", "question", "respondent_role", "scale", "weight", "allows_na"});
    indicator.id = reader.require_string(object, where, "id");
    indicator.question = reader.require_string(object, where, "question");
    const std::string role = reader.require_string(object, where, "respondent_role");
    if (auto parsed = role_from_string(role)) {
        indicator.respondent_role = *parsed;
    } else {
        reader.add(ViolationKind::TypeMismatch, where,
                   "respondent_role must be manager|developer|assessor, got '" + role + "'");
    }
    const std::string scale = reader.require_string(object, where, "scale");
    if (auto parsed = scale_from_string(scale)) {
        indicator.scale = *parsed;
    } else {
        reader.add(ViolationKind::TypeMismatch, where,
                   "scale must be binary|ordinal5, got '" + scale + "'");
    }
    indicator.weight = reader.optional_weight(object, where);
    indicator.allows_na = reader.optional_bool(object, where, "allows_na");
    return indicator;
}

MeasuredConstruct read_construct(DocumentReader& reader, const json& object,
                                 ConstructKind kind, const std::string& ns) {
    MeasuredConstruct construct;
    construct.kind = kind;
    const std::string where = ns + "[" + DocumentReader::peek_string(object, "id") + "]";
    reader.expect_keys(object, where, {"id", "name", "aspects"});
    construct.id = reader.require_string(object, where, "id");
    construct.name = reader.require_string(object, where, "name");
    if (object.contains("aspects")) {
        if (!object["aspects"].is_array()) {
            reader.add(ViolationKind::TypeMismatch, where, "'aspects' must be an array");
        } else {
            for (const auto& aspect_json : object["aspects"]) {
                if (!aspect_json.is_object()) {
                    reader.add(ViolationKind::TypeMismatch, where, "aspect entries must be objects");
                    continue;
                }
                Aspect aspect;
                const std::string aspect_where = where + "/aspect";
                reader.expect_keys(aspect_json, aspect_where, {"id", "name", "weight", "indicators"});
                aspect.id = reader.require_string(aspect_json, aspect_where, "id");
                aspect.name = reader.optional_string(aspect_json, aspect_where, "name");
                aspect.weight = reader.optional_weight(aspect_json, aspect_where);
                if (aspect_json.contains("indicators")) {
                    if (!aspect_json["indicators"].is_array()) {
                        reader.add(ViolationKind::TypeMismatch, aspect_where,
                                   "'indicators' must be an array");
                    } else {
                        for (const auto& indicator_json : aspect_json["indicators"]) {
                            if (!indicator_json.is_object()) {
                                reader.add(ViolationKind::TypeMismatch, aspect_where,
                                           "indicator entries must be objects");
                                continue;
                            }
                            aspect.indicators.push_back(read_indicator(
                                reader, indicator_json, aspect_where + "/indicator"));
                        }
                    }
                }
                construct.aspects.push_back(std::move(aspect));
            }
        }
    }
    return construct;
}

NamedEntity read_named_entity(DocumentReader& reader, const json& object, const std::string& ns) {
    NamedEntity entity;
    const std::string where = ns + "[" + DocumentReader::peek_string(object, "id") + "]";
    reader.expect_keys(object, where, {"id", "name", "description"});
    entity.id = reader.require_string(object, where, "id");
    entity.name = reader.require_string(object, where, "name");
    entity.description = reader.optional_string(object, where, "description");
    return entity;
}

AgilePractice read_practice(DocumentReader& reader, const json& object) {
    AgilePractice practice;
    const std::string where = "practice[" + DocumentReader::peek_string(object, "id") + "]";
    reader.expect_keys(object, where,
                       {"id", "name", "description", "objectives", "prerequisites",
                        "required_characteristics"});
    practice.id = reader.require_string(object, where, "id");
    practice.name = reader.require_string(object, where, "name");
    practice.description = reader.optional_string(object, where, "description");
    practice.objectives = reader.optional_id_array(object, where, "objectives");
    practice.prerequisites = reader.optional_id_array(object, where, "prerequisites");
    if (object.contains("required_characteristics")) {
        if (!object["required_characteristics"].is_array()) {
            reader.add(ViolationKind::TypeMismatch, where,
                       "'required_characteristics' must be an array");
        } else {
            for (const auto& entry : object["required_characteristics"]) {
                if (!entry.is_object()) {
                    reader.add(ViolationKind::TypeMismatch, where,
                               "required_characteristics entries must be objects");
                    continue;
                }
                RequiredCharacteristic required;
                reader.expect_keys(entry, where + "/required_characteristic", {"id", "weight"});
                required.id = reader.require_string(entry, where, "id");
                required.weight = reader.optional_weight(entry, where);
                practice.required_characteristics.push_back(std::move(required));
            }
        }
    }
    return practice;
}

template <typename T, typename Fn>
void read_entity_array(DocumentReader& reader, const json& document, const char* key,
                       std::vector<T>& out, Fn&& read_one) {
    if (!document.contains(key)) {
        return;
    }
    if (!document[key].is_array()) {
        reader.add(ViolationKind::TypeMismatch, key, "must be an array");
        return;
    }
    for (const auto& element : document[key]) {
        if (!element.is_object()) {
            reader.add(ViolationKind::TypeMismatch, key, "entries must be objects");
            continue;
        }
        out.push_back(read_one(element));
    }
}

} // namespace

Catalog load_catalog(std::string_view json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(json_text, e.byte > 0 ? e.byte - 1 : 0);
        throw Error(Errc::ParseError,
                    "catalog parse error at line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + e.what());
    }

    std::vector<Violation> violations;
    DocumentReader reader(violations);

    Catalog catalog;
    if (!document.is_object()) {
        reader.add(ViolationKind::TypeMismatch, "catalog", "top level must be an object");
    } else {
        reader.expect_keys(document, "catalog",
                           {"practices", "objectives", "success_factors", "org_characteristics",
                            "system_characteristics", "qualities", "conflict_rules",
                            "preclusion_rules"});

        read_entity_array(reader, document, "practices", catalog.practices,
                          [&](const json& o) { return read_practice(reader, o); });
        read_entity_array(reader, document, "objectives", catalog.objectives,
                          [&](const json& o) { return read_named_entity(reader, o, "objective"); });
        read_entity_array(reader, document, "success_factors", catalog.success_factors,
                          [&](const json& o) {
                              return read_construct(reader, o, ConstructKind::SuccessFactor,
                                                    "success_factor");
                          });
        read_entity_array(reader, document, "org_characteristics", catalog.org_characteristics,
                          [&](const json& o) {
                              return read_construct(reader, o, ConstructKind::OrgCharacteristic,
                                                    "org_characteristic");
                          });
        read_entity_array(reader, document, "system_characteristics",
                          catalog.system_characteristics, [&](const json& o) {
                              return read_named_entity(reader, o, "system_characteristic");
                          });
        read_entity_array(reader, document, "qualities", catalog.qualities,
                          [&](const json& o) { return read_named_entity(reader, o, "quality"); });
        read_entity_array(reader, document, "conflict_rules", catalog.conflict_rules,
                          [&](const json& o) {
                              ConflictRule rule;
                              reader.expect_keys(o, "conflict_rule",
                                                 {"practice", "characteristic", "rationale"});
                              rule.practice = reader.require_string(o, "conflict_rule", "practice");
                              rule.characteristic =
                                  reader.require_string(o, "conflict_rule", "characteristic");
                              rule.rationale = reader.require_string(o, "conflict_rule", "rationale");
                              return rule;
                          });
        read_entity_array(reader, document, "preclusion_rules", catalog.preclusion_rules,
                          [&](const json& o) {
                              PreclusionRule rule;
                              reader.expect_keys(o, "preclusion_rule",
                                                 {"practice", "quality", "rationale"});
                              rule.practice = reader.require_string(o, "preclusion_rule", "practice");
                              rule.quality = reader.require_string(o, "preclusion_rule", "quality");
                              rule.rationale =
                                  reader.require_string(o, "preclusion_rule", "rationale");
                              return rule;
                          });
    }

    for (const auto& violation : validate_catalog(catalog)) {
        violations.push_back(violation);
    }
    if (!violations.empty()) {
        throw CatalogValidationError(std::move(violations));
    }
    return catalog;
}

std::string catalog_to_json(const Catalog& catalog) {
    ordered_json document;

    auto& practices = document["practices"] = ordered_json::array();
    for (const auto& practice : catalog.practices) {
        ordered_json entry;
        entry["id"] = practice.id;
        entry["name"] = practice.name;
        if (!practice.description.empty()) {
            entry["description"] = practice.description;
        }
        entry["objectives"] = practice.objectives;
        entry["prerequisites"] = practice.prerequisites;
        auto& required = entry["required_characteristics"] = ordered_json::array();
        for (const auto& rc : practice.required_characteristics) {
            required.push_back({{"id", rc.id}, {"weight", rc.weight}});
        }
        practices.push_back(std::move(entry));
    }

    auto write_named = [&document](const char* key, const std::vector<NamedEntity>& entities) {
        auto& array = document[key] = ordered_json::array();
        for (const auto& entity : entities) {
            ordered_json entry;
            entry["id"] = entity.id;
            entry["name"] = entity.name;
            if (!entity.description.empty()) {
                entry["description"] = entity.description;
            }
            array.push_back(std::move(entry));
        }
    };

    auto write_constructs = [&document](const char* key,
                                        const std::vector<MeasuredConstruct>& constructs) {
        auto& array = document[key] = ordered_json::array();
        for (const auto& construct : constructs) {
            ordered_json entry;
            entry["id"] = construct.id;
            entry["name"] = construct.name;
            auto& aspects = entry["aspects"] = ordered_json::array();
            for (const auto& aspect : construct.aspects) {
                ordered_json aspect_json;
                aspect_json["id"] = aspect.id;
                aspect_json["name"] = aspect.name;
                aspect_json["weight"] = aspect.weight;
                auto& indicators = aspect_json["indicators"] = ordered_json::array();
                for (const auto& indicator : aspect.indicators) {
                    ordered_json indicator_json;
                    indicator_json["id"] = indicator.id;
                    indicator_json["question"] = indicator.question;
                    indicator_json["respondent_role"] = to_string(indicator.respondent_role);
                    indicator_json["scale"] = to_string(indicator.scale);
                    indicator_json["weight"] = indicator.weight;
                    indicator_json["allows_na"] = indicator.allows_na;
                    indicators.push_back(std::move(indicator_json));
                }
                aspects.push_back(std::move(aspect_json));
            }
            array.push_back(std::move(entry));
        }
    };

    write_named("objectives", catalog.objectives);
    write_constructs("success_factors", catalog.success_factors);
    write_constructs("org_characteristics", catalog.org_characteristics);
    write_named("system_characteristics", catalog.system_characteristics);
    write_named("qualities", catalog.qualities);

    auto& conflicts = document["conflict_rules"] = ordered_json::array();
    for (const auto& rule : catalog.conflict_rules) {
        conflicts.push_back({{"practice", rule.practice},
                             {"characteristic", rule.characteristic},
                             {"rationale", rule.rationale}});
    }
    auto& preclusions = document["preclusion_rules"] = ordered_json::array();
    for (const auto& rule : catalog.preclusion_rules) {
        preclusions.push_back({{"practice", rule.practice},
                               {"quality", rule.quality},
                               {"rationale", rule.rationale}});
    }

    return document.dump(2) + "\n";
}

} // namespace agilegate
