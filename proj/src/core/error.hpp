#pragma once

#include <stdexcept>
#include <string>

namespace agilegate {

// Absolute tolerance for every degree/threshold comparison the engine makes.
inline constexpr double kDegreeTolerance = 1e-9;

enum class Errc {
    ParseError,              // malformed JSON in any input document
    InvalidCatalog,          // catalog document failed validation
    InvalidDocument,         // non-catalog input document failed schema checks
    UnknownPractice,
    UnknownObjective,
    UnknownCharacteristic,
    UnknownProfileId,
    UnknownFactor,
    UnknownIndicator,
    ScaleMismatch,
    NotApplicableDisallowed,
    MissingAnswer,
    NoUsableAnswers,
    RoleMismatch,
    EmptyFactorSet,
    OutOfRangeDegree,
    InvalidArgument,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

// Rethrow helper: same code, message prefixed with where it happened.
[[noreturn]] inline void rethrow_annotated(const Error& e, const std::string& context) {
    throw Error(e.code(), context + ": " + e.what());
}

} // namespace agilegate
