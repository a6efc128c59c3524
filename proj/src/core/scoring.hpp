#pragma once

// Turns questionnaire answers into degrees of presence for measured
// constructs. Binary answers map to {0, 1}, five-level ordinal answers to
// k/4, multiple respondents average, and not-applicable answers are
// excluded with their weight renormalized over the answered indicators.

#include <optional>
#include <span>
#include <vector>

#include "core/catalog.hpp"

namespace agilegate {

// Normalized score in [0, 1].
struct Degree {
    double value = 0.0;

    bool operator==(const Degree&) const = default;
};

// Checked constructor; tiny floating-point overshoot is clamped, anything
// further out is an error.
Degree make_degree(double value);

enum class AssessmentMode { Strict, Lenient };

struct AnswerValue {
    enum class Kind { NotApplicable, Binary, Ordinal };

    Kind kind = Kind::Binary;
    bool yes = false; // Binary payload
    int level = 0;    // Ordinal payload, 0..4

    static AnswerValue not_applicable() { return {Kind::NotApplicable, false, 0}; }
    static AnswerValue binary(bool yes) { return {Kind::Binary, yes, 0}; }
    static AnswerValue ordinal(int level) { return {Kind::Ordinal, false, level}; }

    bool operator==(const AnswerValue&) const = default;
};

struct Response {
    Id indicator;
    AnswerValue answer;
    Role respondent_role = Role::Assessor;
    std::string respondent_id;

    bool operator==(const Response&) const = default;
};

struct ResponseSet {
    AssessmentMode mode = AssessmentMode::Strict;
    std::vector<Response> responses;

    bool operator==(const ResponseSet&) const = default;
};

// Maps one answer onto [0,1]: yes->1, no->0, ordinal k->k/4. Returns nullopt
// for a permitted not-applicable answer. Throws ScaleMismatch when the answer
// variant does not fit the indicator's scale and NotApplicableDisallowed when
// the indicator forbids NA.
std::optional<Degree> normalize_answer(const Indicator& indicator, const AnswerValue& answer);

// Arithmetic mean of the normalized non-NA answers for one indicator;
// nullopt when every response is NA. Throws MissingAnswer on an empty list.
std::optional<Degree> aggregate_indicator_responses(const Indicator& indicator,
                                                    std::span<const Response> responses);

// Weight-weighted mean over the aspect's answered indicators; NA indicators
// are dropped and the remaining weights renormalized. In lenient mode an
// unanswered indicator counts as NA; in strict mode it is fatal.
Degree aspect_score(const Aspect& aspect, const ResponseSet& response_set,
                    std::vector<std::string>* warnings = nullptr);

// Weight-weighted mean of the construct's aspect scores.
Degree construct_degree(const MeasuredConstruct& construct, const ResponseSet& response_set,
                        std::vector<std::string>* warnings = nullptr);

// Parses a responses document. Throws ParseError / InvalidDocument.
ResponseSet parse_responses(std::string_view json_text);

// Validates a response set against the catalog: indicator ids resolve, answer
// variants fit the indicator scale, NA is permitted, and respondent roles
// match the indicator's designated role (fatal in strict mode). Returns the
// lenient-mode warnings.
std::vector<std::string> check_responses(const Catalog& catalog, const ResponseSet& response_set);

} // namespace agilegate
