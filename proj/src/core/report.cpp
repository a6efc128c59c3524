#include "core/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>

namespace agilegate {

using nlohmann::json;

std::string fmt4(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    std::string text = buffer;
    if (text == "-0.0000") {
        text = "0.0000";
    }
    return text;
}

namespace {

std::string fmt_margin(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%+.4f", value);
    std::string text = buffer;
    if (text == "-0.0000") {
        text = "+0.0000";
    }
    return text;
}

// Minimal deterministic JSON emitter: insertion order, two-space indent,
// numbers are pre-formatted by the caller.
class JsonWriter {
public:
    std::string take() { return std::move(out_); }

    void begin_object() {
        separate();
        out_ += "{";
        push();
    }
    void begin_object(const char* key) {
        separate();
        write_key(key);
        out_ += "{";
        push();
    }
    void end_object() {
        pop();
        out_ += "}";
    }
    void begin_array(const char* key) {
        separate();
        write_key(key);
        out_ += "[";
        push();
    }
    void end_array() {
        pop();
        out_ += "]";
    }
    void field(const char* key, const std::string& value) {
        separate();
        write_key(key);
        out_ += quote(value);
    }
    void field(const char* key, bool value) {
        separate();
        write_key(key);
        out_ += value ? "true" : "false";
    }
    void field_number(const char* key, double value) {
        separate();
        write_key(key);
        out_ += fmt4(value);
    }
    void element(const std::string& value) {
        separate();
        out_ += quote(value);
    }

    static std::string quote(const std::string& value) {
        std::string quoted = "\"";
        for (char c : value) {
            switch (c) {
            case '"': quoted += "\\\""; break;
            case '\\': quoted += "\\\\"; break;
            case '\n': quoted += "\\n"; break;
            case '\r': quoted += "\\r"; break;
            case '\t': quoted += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buffer[8];
                    std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
                    quoted += buffer;
                } else {
                    quoted += c;
                }
            }
        }
        quoted += "\"";
        return quoted;
    }

private:
    void write_key(const char* key) {
        out_ += quote(key);
        out_ += ": ";
    }
    void separate() {
        if (!first_.empty()) {
            if (!first_.back()) {
                out_ += ",";
            }
            first_.back() = false;
            out_ += "\n";
            out_.append(static_cast<std::size_t>(indent_) * 2, ' ');
        }
    }
    void push() {
        first_.push_back(true);
        ++indent_;
    }
    void pop() {
        const bool was_empty = first_.back();
        first_.pop_back();
        --indent_;
        if (!was_empty) {
            out_ += "\n";
            out_.append(static_cast<std::size_t>(indent_) * 2, ' ');
        }
    }

    std::string out_;
    std::vector<bool> first_;
    int indent_ = 0;
};

void write_chain(JsonWriter& writer, const std::vector<ChainLink>& chain) {
    writer.begin_array("chain");
    for (const auto& link : chain) {
        writer.begin_object();
        writer.field("practice", link.practice);
        writer.field("cause", to_string(link.cause));
        if (link.cause == ExclusionCause::PrerequisiteExcluded) {
            writer.field("via", link.via);
        }
        if (link.cause == ExclusionCause::NotReady) {
            writer.begin_array("gaps");
            for (const auto& gap : link.gaps) {
                writer.begin_object();
                writer.field("characteristic", gap.characteristic);
                writer.field_number("shortfall", gap.shortfall);
                writer.end_object();
            }
            writer.end_array();
        }
        writer.end_object();
    }
    writer.end_array();
}

void write_exclusions(JsonWriter& writer, const char* key,
                      const std::vector<Exclusion>& exclusions) {
    writer.begin_array(key);
    for (const auto& exclusion : exclusions) {
        writer.begin_object();
        writer.field("practice", exclusion.practice);
        write_chain(writer, exclusion.chain);
        writer.end_object();
    }
    writer.end_array();
}

std::string render_machine(const DecisionReport& report) {
    JsonWriter writer;
    writer.begin_object();
    writer.field("tool", report.tool);

    writer.begin_array("inputs");
    for (const auto& input : report.inputs) {
        writer.begin_object();
        writer.field("kind", input.kind);
        writer.field("digest", input.digest);
        writer.end_object();
    }
    writer.end_array();

    writer.begin_object("policies");
    writer.begin_object("gate");
    writer.field_number("default_threshold", report.policies.gate.default_threshold);
    writer.begin_array("overrides");
    for (const auto& [factor, threshold] : report.policies.gate.overrides) {
        writer.begin_object();
        writer.field("factor", factor);
        writer.field_number("threshold", threshold);
        writer.end_object();
    }
    writer.end_array();
    writer.end_object();
    writer.begin_object("readiness");
    if (report.policies.readiness.mode == ReadinessPolicy::Mode::Strict) {
        writer.field("mode", std::string("strict"));
    } else {
        writer.field("mode", std::string("threshold"));
        writer.field_number("value", report.policies.readiness.value);
    }
    writer.end_object();
    writer.end_object();

    writer.begin_array("notes");
    for (const auto& note : report.notes) {
        writer.element(note);
    }
    writer.end_array();
    writer.begin_array("warnings");
    for (const auto& warning : report.warnings) {
        writer.element(warning);
    }
    writer.end_array();
    writer.begin_array("overrides");
    for (const auto& [characteristic, degree] : report.overrides) {
        writer.begin_object();
        writer.field("characteristic", characteristic);
        writer.field_number("degree", degree);
        writer.end_object();
    }
    writer.end_array();

    writer.begin_object("gate");
    if (report.gate_status == GateStatus::Assumed) {
        writer.field("status", std::string("assumed"));
    } else {
        writer.field("status", std::string("completed"));
        writer.field("verdict", std::string(report.gate->verdict == Verdict::Go ? "go" : "no-go"));
        writer.begin_array("factors");
        for (const auto& factor : report.gate->factor_results) {
            writer.begin_object();
            writer.field("factor", factor.factor);
            writer.field_number("degree", factor.degree);
            writer.field_number("threshold", factor.threshold);
            writer.field_number("margin", factor.margin);
            writer.field("pass", factor.pass);
            writer.end_object();
        }
        writer.end_array();
    }
    writer.end_object();

    writer.begin_object("suitability");
    if (!report.suitability) {
        writer.field("status", std::string("skipped"));
        writer.field("reason", report.suitability_skip_reason);
    } else {
        writer.field("status", std::string("completed"));
        writer.begin_array("verdicts");
        for (const auto& verdict : *report.suitability) {
            writer.begin_object();
            writer.field("practice", verdict.practice);
            writer.field("status", std::string(verdict.suitable ? "suitable" : "discarded"));
            writer.begin_array("reasons");
            for (const auto& reason : verdict.reasons) {
                writer.begin_object();
                if (reason.kind == RuleKind::Conflict) {
                    writer.field("kind", std::string("conflict"));
                    writer.field("characteristic", reason.subject);
                } else {
                    writer.field("kind", std::string("preclusion"));
                    writer.field("quality", reason.subject);
                }
                writer.field("rationale", reason.rationale);
                writer.end_object();
            }
            writer.end_array();
            writer.end_object();
        }
        writer.end_array();
    }
    writer.end_object();

    writer.begin_object("readiness");
    if (!report.readiness) {
        writer.field("status", std::string("skipped"));
        writer.field("reason", report.readiness_skip_reason);
    } else {
        const ReadinessSection& section = *report.readiness;
        writer.field("status", std::string("completed"));
        writer.begin_array("objectives");
        for (const auto& objective : section.objectives) {
            writer.element(objective);
        }
        writer.end_array();
        writer.begin_array("candidates");
        for (const auto& candidate : section.candidates.candidates) {
            writer.element(candidate);
        }
        writer.end_array();
        writer.begin_array("dependency_induced");
        for (const auto& pulled : section.candidates.pulled_prerequisites) {
            writer.element(pulled);
        }
        writer.end_array();
        write_exclusions(writer, "selection_exclusions", section.candidates.exclusions);
        writer.begin_array("practices");
        for (const auto& practice : section.report.practices) {
            writer.begin_object();
            writer.field("practice", practice.practice);
            writer.field_number("readiness", practice.readiness);
            writer.field("ready", practice.ready);
            writer.field("vacuous", practice.vacuous);
            writer.begin_array("characteristics");
            for (const auto& characteristic : practice.characteristics) {
                writer.begin_object();
                writer.field("characteristic", characteristic.characteristic);
                writer.field_number("degree", characteristic.degree);
                writer.field_number("required_level", characteristic.required_level);
                writer.field_number("gap", characteristic.gap);
                writer.field("overridden", characteristic.overridden);
                writer.end_object();
            }
            writer.end_array();
            writer.end_object();
        }
        writer.end_array();
    }
    writer.end_object();

    writer.begin_object("plan");
    if (!report.plan) {
        writer.field("status", std::string("skipped"));
        writer.field("reason", report.plan_skip_reason);
    } else {
        writer.field("status", std::string("completed"));
        writer.begin_array("selected");
        for (const auto& practice : report.plan->selected) {
            writer.element(practice);
        }
        writer.end_array();
        write_exclusions(writer, "excluded", report.plan->excluded);
    }
    writer.end_object();

    writer.end_object();
    std::string out = writer.take();
    out += "\n";
    return out;
}

std::string join_ids(const std::vector<Id>& ids) {
    std::string text;
    for (const auto& id : ids) {
        text += (text.empty() ? "" : ", ") + id;
    }
    return text.empty() ? "(none)" : text;
}

std::string render_human(const DecisionReport& report) {
    std::string out;
    out += "AGILEGATE DECISION REPORT\n";
    out += "=========================\n";
    out += "tool: " + report.tool + "\n";
    for (const auto& input : report.inputs) {
        out += "input " + input.kind + ": " + input.digest + "\n";
    }
    out += "gate policy: default threshold " + fmt4(report.policies.gate.default_threshold) +
           " (closed boundary: degree >= threshold passes)\n";
    for (const auto& [factor, threshold] : report.policies.gate.overrides) {
        out += "  threshold override " + factor + ": " + fmt4(threshold) + "\n";
    }
    if (report.policies.readiness.mode == ReadinessPolicy::Mode::Strict) {
        out += "readiness policy: strict (every required characteristic fully present)\n";
    } else {
        out += "readiness policy: threshold " + fmt4(report.policies.readiness.value) + "\n";
    }
    for (const auto& note : report.notes) {
        out += "note: " + note + "\n";
    }
    for (const auto& warning : report.warnings) {
        out += "warning: " + warning + "\n";
    }
    for (const auto& [characteristic, degree] : report.overrides) {
        out += "what-if override " + characteristic + ": " + fmt4(degree) + "\n";
    }
    out += "\n";

    if (report.gate_status == GateStatus::Assumed) {
        out += "VERDICT: GO (ASSUMED)\n";
    } else if (report.gate->verdict == Verdict::Go) {
        out += "VERDICT: GO\n";
    } else {
        out += "VERDICT: NO-GO\n";
    }
    out += "\n";

    out += "Stage 1: go/no-go gate\n";
    out += "----------------------\n";
    if (report.gate_status == GateStatus::Assumed) {
        out += "  assumed go (no gate evidence; --assume-go)\n";
    } else {
        for (const auto& factor : report.gate->factor_results) {
            out += std::string(factor.pass ? "  [pass] " : "  [FAIL] ") + factor.factor +
                   ": degree " + fmt4(factor.degree) + ", threshold " + fmt4(factor.threshold) +
                   ", margin " + fmt_margin(factor.margin) + "\n";
        }
    }
    out += "\n";

    out += "Stage 2: suitability filter\n";
    out += "---------------------------\n";
    if (!report.suitability) {
        out += "  skipped (" + report.suitability_skip_reason + ")\n";
    } else {
        std::vector<Id> suitable;
        for (const auto& verdict : *report.suitability) {
            if (verdict.suitable) {
                suitable.push_back(verdict.practice);
                continue;
            }
            out += "  discarded " + verdict.practice + ":\n";
            for (const auto& reason : verdict.reasons) {
                if (reason.kind == RuleKind::Conflict) {
                    out += "    - conflicts with " + reason.subject + ": " + reason.rationale + "\n";
                } else {
                    out += "    - precludes " + reason.subject + ": " + reason.rationale + "\n";
                }
            }
        }
        out += "  suitable: " + join_ids(suitable) + "\n";
    }
    out += "\n";

    out += "Stage 3: organizational readiness\n";
    out += "---------------------------------\n";
    if (!report.readiness) {
        out += "  skipped (" + report.readiness_skip_reason + ")\n";
    } else {
        const ReadinessSection& section = *report.readiness;
        out += "  objectives: " + join_ids(section.objectives) + "\n";
        out += "  candidates: " + join_ids(section.candidates.candidates) + "\n";
        out += "  dependency-induced: " + join_ids(section.candidates.pulled_prerequisites) + "\n";
        if (!section.candidates.exclusions.empty()) {
            out += "  excluded at selection:\n";
            for (const auto& exclusion : section.candidates.exclusions) {
                out += "    - " + to_string(exclusion) + "\n";
            }
        }
        out += "  readiness policy level: " + fmt4(section.report.policy.level()) + "\n";
        for (const auto& practice : section.report.practices) {
            out += std::string(practice.ready ? "  [ready] " : "  [GAP]   ") + practice.practice +
                   ": readiness " + fmt4(practice.readiness);
            if (practice.vacuous) {
                out += " (no required characteristics listed)";
            }
            out += "\n";
            for (const auto& characteristic : practice.characteristics) {
                out += "      " + characteristic.characteristic + ": degree " +
                       fmt4(characteristic.degree);
                if (characteristic.gap > 0.0) {
                    out += ", gap " + fmt4(characteristic.gap);
                }
                if (characteristic.overridden) {
                    out += " (what-if override)";
                }
                out += "\n";
            }
        }
    }
    out += "\n";

    out += "Adoption plan\n";
    out += "-------------\n";
    if (!report.plan) {
        out += "  skipped (" + report.plan_skip_reason + ")\n";
    } else {
        if (report.plan->selected.empty()) {
            out += "  (no practices selected)\n";
        }
        for (std::size_t i = 0; i < report.plan->selected.size(); ++i) {
            out += "  " + std::to_string(i + 1) + ". " + report.plan->selected[i] + "\n";
        }
        if (report.plan->excluded.empty()) {
            out += "  excluded: (none)\n";
        } else {
            out += "  excluded:\n";
            for (const auto& exclusion : report.plan->excluded) {
                out += "    - " + to_string(exclusion) + "\n";
            }
        }
    }
    return out;
}

// ---- machine-format parsing ----

const json& need(const json& object, const char* key, const char* where) {
    if (!object.contains(key)) {
        throw Error(Errc::InvalidDocument,
                    std::string("report ") + where + ": missing '" + key + "'");
    }
    return object[key];
}

std::string need_string(const json& object, const char* key, const char* where) {
    const auto& value = need(object, key, where);
    if (!value.is_string()) {
        throw Error(Errc::InvalidDocument,
                    std::string("report ") + where + ": '" + key + "' must be a string");
    }
    return value.get<std::string>();
}

double need_number(const json& object, const char* key, const char* where) {
    const auto& value = need(object, key, where);
    if (!value.is_number()) {
        throw Error(Errc::InvalidDocument,
                    std::string("report ") + where + ": '" + key + "' must be a number");
    }
    return value.get<double>();
}

bool need_bool(const json& object, const char* key, const char* where) {
    const auto& value = need(object, key, where);
    if (!value.is_boolean()) {
        throw Error(Errc::InvalidDocument,
                    std::string("report ") + where + ": '" + key + "' must be a boolean");
    }
    return value.get<bool>();
}

std::vector<std::string> string_array(const json& object, const char* key, const char* where) {
    const auto& value = need(object, key, where);
    if (!value.is_array()) {
        throw Error(Errc::InvalidDocument,
                    std::string("report ") + where + ": '" + key + "' must be an array");
    }
    std::vector<std::string> items;
    for (const auto& element : value) {
        if (!element.is_string()) {
            throw Error(Errc::InvalidDocument,
                        std::string("report ") + where + ": '" + key + "' entries must be strings");
        }
        items.push_back(element.get<std::string>());
    }
    return items;
}

std::vector<ChainLink> parse_chain(const json& array, const char* where) {
    std::vector<ChainLink> chain;
    for (const auto& entry : array) {
        ChainLink link;
        link.practice = need_string(entry, "practice", where);
        const std::string cause = need_string(entry, "cause", where);
        if (cause == "not-suitable") {
            link.cause = ExclusionCause::NotSuitable;
        } else if (cause == "not-ready") {
            link.cause = ExclusionCause::NotReady;
            for (const auto& gap : need(entry, "gaps", where)) {
                link.gaps.push_back({need_string(gap, "characteristic", where),
                                     need_number(gap, "shortfall", where)});
            }
        } else if (cause == "prerequisite-excluded") {
            link.cause = ExclusionCause::PrerequisiteExcluded;
            link.via = need_string(entry, "via", where);
        } else {
            throw Error(Errc::InvalidDocument,
                        std::string("report ") + where + ": unknown cause '" + cause + "'");
        }
        chain.push_back(std::move(link));
    }
    return chain;
}

std::vector<Exclusion> parse_exclusions(const json& array, const char* where) {
    std::vector<Exclusion> exclusions;
    for (const auto& entry : array) {
        Exclusion exclusion;
        exclusion.practice = need_string(entry, "practice", where);
        exclusion.chain = parse_chain(need(entry, "chain", where), where);
        exclusions.push_back(std::move(exclusion));
    }
    return exclusions;
}

} // namespace

std::string render_report(const DecisionReport& report, ReportFormat format) {
    return format == ReportFormat::Machine ? render_machine(report) : render_human(report);
}

DecisionReport parse_report(std::string_view json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("report parse error: ") + e.what());
    }
    if (!document.is_object()) {
        throw Error(Errc::InvalidDocument, "report must be a JSON object");
    }

    DecisionReport report;
    report.tool = need_string(document, "tool", "header");

    for (const auto& entry : need(document, "inputs", "header")) {
        report.inputs.push_back(
            {need_string(entry, "kind", "inputs"), need_string(entry, "digest", "inputs")});
    }

    const auto& policies = need(document, "policies", "header");
    const auto& gate_policy = need(policies, "gate", "policies");
    report.policies.gate.default_threshold =
        need_number(gate_policy, "default_threshold", "policies.gate");
    for (const auto& entry : need(gate_policy, "overrides", "policies.gate")) {
        report.policies.gate.overrides[need_string(entry, "factor", "policies.gate")] =
            need_number(entry, "threshold", "policies.gate");
    }
    const auto& readiness_policy = need(policies, "readiness", "policies");
    const std::string mode = need_string(readiness_policy, "mode", "policies.readiness");
    if (mode == "strict") {
        report.policies.readiness.mode = ReadinessPolicy::Mode::Strict;
        report.policies.readiness.value = 1.0;
    } else if (mode == "threshold") {
        report.policies.readiness.mode = ReadinessPolicy::Mode::Threshold;
        report.policies.readiness.value = need_number(readiness_policy, "value", "policies.readiness");
    } else {
        throw Error(Errc::InvalidDocument, "report policies.readiness: unknown mode '" + mode + "'");
    }

    report.notes = string_array(document, "notes", "header");
    report.warnings = string_array(document, "warnings", "header");
    for (const auto& entry : need(document, "overrides", "header")) {
        report.overrides[need_string(entry, "characteristic", "overrides")] =
            need_number(entry, "degree", "overrides");
    }

    const auto& gate = need(document, "gate", "gate");
    const std::string gate_status = need_string(gate, "status", "gate");
    if (gate_status == "assumed") {
        report.gate_status = GateStatus::Assumed;
    } else if (gate_status == "completed") {
        report.gate_status = GateStatus::Completed;
        GateDecision decision;
        const std::string verdict = need_string(gate, "verdict", "gate");
        if (verdict != "go" && verdict != "no-go") {
            throw Error(Errc::InvalidDocument, "report gate: unknown verdict '" + verdict + "'");
        }
        decision.verdict = verdict == "go" ? Verdict::Go : Verdict::NoGo;
        for (const auto& entry : need(gate, "factors", "gate")) {
            FactorResult factor;
            factor.factor = need_string(entry, "factor", "gate.factors");
            factor.degree = need_number(entry, "degree", "gate.factors");
            factor.threshold = need_number(entry, "threshold", "gate.factors");
            factor.margin = need_number(entry, "margin", "gate.factors");
            factor.pass = need_bool(entry, "pass", "gate.factors");
            decision.factor_results.push_back(std::move(factor));
        }
        report.gate = std::move(decision);
    } else {
        throw Error(Errc::InvalidDocument, "report gate: unknown status '" + gate_status + "'");
    }

    const auto& suitability = need(document, "suitability", "suitability");
    const std::string suitability_status = need_string(suitability, "status", "suitability");
    if (suitability_status == "skipped") {
        report.suitability_skip_reason = need_string(suitability, "reason", "suitability");
    } else if (suitability_status == "completed") {
        std::vector<SuitabilityVerdict> verdicts;
        for (const auto& entry : need(suitability, "verdicts", "suitability")) {
            SuitabilityVerdict verdict;
            verdict.practice = need_string(entry, "practice", "suitability.verdicts");
            const std::string status = need_string(entry, "status", "suitability.verdicts");
            if (status != "suitable" && status != "discarded") {
                throw Error(Errc::InvalidDocument,
                            "report suitability: unknown status '" + status + "'");
            }
            verdict.suitable = status == "suitable";
            for (const auto& reason : need(entry, "reasons", "suitability.verdicts")) {
                ReasonRef ref;
                const std::string kind = need_string(reason, "kind", "suitability.reasons");
                if (kind == "conflict") {
                    ref.kind = RuleKind::Conflict;
                    ref.subject = need_string(reason, "characteristic", "suitability.reasons");
                } else if (kind == "preclusion") {
                    ref.kind = RuleKind::Preclusion;
                    ref.subject = need_string(reason, "quality", "suitability.reasons");
                } else {
                    throw Error(Errc::InvalidDocument,
                                "report suitability: unknown reason kind '" + kind + "'");
                }
                ref.rationale = need_string(reason, "rationale", "suitability.reasons");
                verdict.reasons.push_back(std::move(ref));
            }
            verdicts.push_back(std::move(verdict));
        }
        report.suitability = std::move(verdicts);
    } else {
        throw Error(Errc::InvalidDocument,
                    "report suitability: unknown status '" + suitability_status + "'");
    }

    const auto& readiness = need(document, "readiness", "readiness");
    const std::string readiness_status = need_string(readiness, "status", "readiness");
    if (readiness_status == "skipped") {
        report.readiness_skip_reason = need_string(readiness, "reason", "readiness");
    } else if (readiness_status == "completed") {
        ReadinessSection section;
        section.objectives = string_array(readiness, "objectives", "readiness");
        section.candidates.candidates = string_array(readiness, "candidates", "readiness");
        section.candidates.pulled_prerequisites =
            string_array(readiness, "dependency_induced", "readiness");
        section.candidates.exclusions =
            parse_exclusions(need(readiness, "selection_exclusions", "readiness"), "readiness");
        section.report.policy = report.policies.readiness;
        for (const auto& entry : need(readiness, "practices", "readiness")) {
            PracticeReadiness practice;
            practice.practice = need_string(entry, "practice", "readiness.practices");
            practice.readiness = need_number(entry, "readiness", "readiness.practices");
            practice.ready = need_bool(entry, "ready", "readiness.practices");
            practice.vacuous = need_bool(entry, "vacuous", "readiness.practices");
            for (const auto& ch : need(entry, "characteristics", "readiness.practices")) {
                CharacteristicReadiness characteristic;
                characteristic.characteristic =
                    need_string(ch, "characteristic", "readiness.characteristics");
                characteristic.degree = need_number(ch, "degree", "readiness.characteristics");
                characteristic.required_level =
                    need_number(ch, "required_level", "readiness.characteristics");
                characteristic.gap = need_number(ch, "gap", "readiness.characteristics");
                characteristic.overridden =
                    need_bool(ch, "overridden", "readiness.characteristics");
                practice.characteristics.push_back(std::move(characteristic));
            }
            section.report.practices.push_back(std::move(practice));
        }
        report.readiness = std::move(section);
    } else {
        throw Error(Errc::InvalidDocument,
                    "report readiness: unknown status '" + readiness_status + "'");
    }

    const auto& plan = need(document, "plan", "plan");
    const std::string plan_status = need_string(plan, "status", "plan");
    if (plan_status == "skipped") {
        report.plan_skip_reason = need_string(plan, "reason", "plan");
    } else if (plan_status == "completed") {
        AdoptionPlan adoption;
        adoption.selected = string_array(plan, "selected", "plan");
        adoption.excluded = parse_exclusions(need(plan, "excluded", "plan"), "plan");
        report.plan = std::move(adoption);
    } else {
        throw Error(Errc::InvalidDocument, "report plan: unknown status '" + plan_status + "'");
    }

    return report;
}

} // namespace agilegate
