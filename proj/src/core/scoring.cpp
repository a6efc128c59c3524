#include "core/scoring.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace agilegate {

using nlohmann::json;

Degree make_degree(double value) {
    if (value < -kDegreeTolerance || value > 1.0 + kDegreeTolerance) {
        throw Error(Errc::OutOfRangeDegree,
                    "degree " + std::to_string(value) + " is outside [0, 1]");
    }
    return {std::clamp(value, 0.0, 1.0)};
}

std::optional<Degree> normalize_answer(const Indicator& indicator, const AnswerValue& answer) {
    switch (answer.kind) {
    case AnswerValue::Kind::NotApplicable:
        if (!indicator.allows_na) {
            throw Error(Errc::NotApplicableDisallowed,
                        "indicator '" + indicator.id + "' does not allow not-applicable answers");
        }
        return std::nullopt;
    case AnswerValue::Kind::Binary:
        if (indicator.scale != Scale::Binary) {
            throw Error(Errc::ScaleMismatch,
                        "indicator '" + indicator.id + "' expects an ordinal5 answer");
        }
        return make_degree(answer.yes ? 1.0 : 0.0);
    case AnswerValue::Kind::Ordinal:
        if (indicator.scale != Scale::Ordinal5) {
            throw Error(Errc::ScaleMismatch,
                        "indicator '" + indicator.id + "' expects a binary answer");
        }
        if (answer.level < 0 || answer.level > 4) {
            throw Error(Errc::InvalidArgument,
                        "ordinal level " + std::to_string(answer.level) + " is outside 0..4");
        }
        return make_degree(static_cast<double>(answer.level) / 4.0);
    }
    throw Error(Errc::Internal, "unreachable answer kind");
}

std::optional<Degree> aggregate_indicator_responses(const Indicator& indicator,
                                                    std::span<const Response> responses) {
    if (responses.empty()) {
        throw Error(Errc::MissingAnswer, "indicator '" + indicator.id + "' has no response");
    }
    double sum = 0.0;
    std::size_t answered = 0;
    for (const auto& response : responses) {
        if (response.indicator != indicator.id) {
            throw Error(Errc::InvalidArgument,
                        "response for '" + response.indicator + "' passed to indicator '" +
                            indicator.id + "'");
        }
        if (auto score = normalize_answer(indicator, response.answer)) {
            sum += score->value;
            ++answered;
        }
    }
    if (answered == 0) {
        return std::nullopt;
    }
    return make_degree(sum / static_cast<double>(answered));
}

namespace {

std::vector<Response> responses_for(const Indicator& indicator, const ResponseSet& response_set,
                                    std::vector<std::string>* warnings) {
    std::vector<Response> matched;
    for (const auto& response : response_set.responses) {
        if (response.indicator != indicator.id) {
            continue;
        }
        if (response.respondent_role != indicator.respondent_role) {
            const std::string note = "indicator '" + indicator.id + "' is designated for " +
                                     to_string(indicator.respondent_role) + " but was answered by " +
                                     to_string(response.respondent_role) + " '" +
                                     response.respondent_id + "'";
            if (response_set.mode == AssessmentMode::Strict) {
                throw Error(Errc::RoleMismatch, note);
            }
            if (warnings) {
                warnings->push_back(note);
            }
        }
        matched.push_back(response);
    }
    return matched;
}

} // namespace

Degree aspect_score(const Aspect& aspect, const ResponseSet& response_set,
                    std::vector<std::string>* warnings) {
    double weighted_sum = 0.0;
    double weight_total = 0.0;
    for (const auto& indicator : aspect.indicators) {
        const auto matched = responses_for(indicator, response_set, warnings);
        std::optional<Degree> score;
        if (matched.empty()) {
            if (response_set.mode == AssessmentMode::Strict) {
                throw Error(Errc::MissingAnswer,
                            "indicator '" + indicator.id + "' has no response");
            }
            // Lenient: unanswered behaves like not-applicable.
        } else {
            score = aggregate_indicator_responses(indicator, matched);
        }
        if (score) {
            weighted_sum += indicator.weight * score->value;
            weight_total += indicator.weight;
        }
    }
    if (weight_total <= 0.0) {
        throw Error(Errc::NoUsableAnswers,
                    "aspect '" + aspect.id + "' has no usable answers");
    }
    return make_degree(weighted_sum / weight_total);
}

Degree construct_degree(const MeasuredConstruct& construct, const ResponseSet& response_set,
                        std::vector<std::string>* warnings) {
    if (construct.aspects.empty()) {
        throw Error(Errc::InvalidArgument,
                    "construct '" + construct.id + "' has no aspects");
    }
    double weighted_sum = 0.0;
    double weight_total = 0.0;
    for (const auto& aspect : construct.aspects) {
        try {
            const Degree score = aspect_score(aspect, response_set, warnings);
            weighted_sum += aspect.weight * score.value;
            weight_total += aspect.weight;
        } catch (const Error& e) {
            rethrow_annotated(e, "construct '" + construct.id + "', aspect '" + aspect.id + "'");
        }
    }
    return make_degree(weighted_sum / weight_total);
}

ResponseSet parse_responses(std::string_view json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("responses parse error: ") + e.what());
    }
    if (!document.is_object()) {
        throw Error(Errc::InvalidDocument, "responses document must be a JSON object");
    }
    for (const auto& [key, value] : document.items()) {
        if (key != "mode" && key != "responses") {
            throw Error(Errc::InvalidDocument, "responses document: unexpected key '" + key + "'");
        }
    }

    ResponseSet set;
    if (document.contains("mode")) {
        const std::string mode = document["mode"].is_string() ? document["mode"].get<std::string>() : "";
        if (mode == "strict") {
            set.mode = AssessmentMode::Strict;
        } else if (mode == "lenient") {
            set.mode = AssessmentMode::Lenient;
        } else {
            throw Error(Errc::InvalidDocument, "responses mode must be \"strict\" or \"lenient\"");
        }
    }
    if (!document.contains("responses") || !document["responses"].is_array()) {
        throw Error(Errc::InvalidDocument, "responses document needs a \"responses\" array");
    }

    for (const auto& entry : document["responses"]) {
        if (!entry.is_object()) {
            throw Error(Errc::InvalidDocument, "response entries must be objects");
        }
        for (const auto& [key, value] : entry.items()) {
            if (key != "indicator" && key != "answer" && key != "respondent_role" &&
                key != "respondent_id") {
                throw Error(Errc::InvalidDocument, "response entry: unexpected key '" + key + "'");
            }
        }
        Response response;
        if (!entry.contains("indicator") || !entry["indicator"].is_string()) {
            throw Error(Errc::InvalidDocument, "response entry needs a string \"indicator\"");
        }
        response.indicator = entry["indicator"].get<std::string>();

        if (!entry.contains("answer")) {
            throw Error(Errc::InvalidDocument,
                        "response for '" + response.indicator + "' needs an \"answer\"");
        }
        const auto& answer = entry["answer"];
        if (answer.is_string()) {
            const std::string text = answer.get<std::string>();
            if (text == "yes") {
                response.answer = AnswerValue::binary(true);
            } else if (text == "no") {
                response.answer = AnswerValue::binary(false);
            } else if (text == "na") {
                response.answer = AnswerValue::not_applicable();
            } else {
                throw Error(Errc::InvalidDocument,
                            "answer for '" + response.indicator +
                                "' must be \"yes\", \"no\", \"na\", or an integer 0..4");
            }
        } else if (answer.is_number_integer()) {
            const auto level = answer.get<long long>();
            if (level < 0 || level > 4) {
                throw Error(Errc::InvalidDocument,
                            "ordinal answer for '" + response.indicator + "' must be in 0..4");
            }
            response.answer = AnswerValue::ordinal(static_cast<int>(level));
        } else {
            throw Error(Errc::InvalidDocument,
                        "answer for '" + response.indicator +
                            "' must be \"yes\", \"no\", \"na\", or an integer 0..4");
        }

        if (!entry.contains("respondent_role") || !entry["respondent_role"].is_string()) {
            throw Error(Errc::InvalidDocument,
                        "response for '" + response.indicator +
                            "' needs a string \"respondent_role\"");
        }
        if (auto role = role_from_string(entry["respondent_role"].get<std::string>())) {
            response.respondent_role = *role;
        } else {
            throw Error(Errc::InvalidDocument,
                        "respondent_role for '" + response.indicator +
                            "' must be manager|developer|assessor");
        }
        if (!entry.contains("respondent_id") || !entry["respondent_id"].is_string()) {
            throw Error(Errc::InvalidDocument,
                        "response for '" + response.indicator +
                            "' needs a string \"respondent_id\"");
        }
        response.respondent_id = entry["respondent_id"].get<std::string>();
        set.responses.push_back(std::move(response));
    }
    return set;
}

std::vector<std::string> check_responses(const Catalog& catalog, const ResponseSet& response_set) {
    std::vector<std::string> warnings;
    for (const auto& response : response_set.responses) {
        const Indicator* indicator = catalog.find_indicator(response.indicator);
        if (!indicator) {
            throw Error(Errc::UnknownIndicator,
                        "response references unknown indicator '" + response.indicator + "'");
        }
        normalize_answer(*indicator, response.answer); // scale / NA checks
        if (response.respondent_role != indicator->respondent_role) {
            const std::string note = "indicator '" + indicator->id + "' is designated for " +
                                     to_string(indicator->respondent_role) +
                                     " but was answered by " +
                                     to_string(response.respondent_role) + " '" +
                                     response.respondent_id + "'";
            if (response_set.mode == AssessmentMode::Strict) {
                throw Error(Errc::RoleMismatch, note);
            }
            warnings.push_back(note);
        }
    }
    return warnings;
}

} // namespace agilegate
