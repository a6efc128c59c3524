#pragma once

// Decision report rendering. The machine format is deterministic JSON with
// stable key order and all numeric fields at fixed 4-decimal formatting, so
// byte-identical output is reproducible and golden-file testable; parsing it
// back and re-rendering is byte-identical. The human format is a sectioned
// plain-text report.

#include "core/pipeline.hpp"

namespace agilegate {

enum class ReportFormat { Human, Machine };

std::string render_report(const DecisionReport& report, ReportFormat format);

// Parses a machine-format report. Throws ParseError / InvalidDocument.
DecisionReport parse_report(std::string_view json_text);

// "0.8000" style fixed formatting used by both report formats.
std::string fmt4(double value);

} // namespace agilegate
