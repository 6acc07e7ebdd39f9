#pragma once

#include <optional>
#include <string>
#include <vector>

namespace opm {

enum class Severity { Error, Warning };
const char* to_string(Severity severity);

struct SourceSpan {
    int line = 1;   // 1-based
    int column = 1; // 1-based
    int length = 1; // characters
};

/// One finding, from the validator (R/W), the refinement consistency check
/// (C), the analysis report (A) or the parser (P, with a span).
struct Diagnostic {
    std::string code;
    Severity severity = Severity::Error;
    std::string subject;
    std::string message;
    std::optional<SourceSpan> span;
};

/// "CODE severity [line:col] subject: message", the line format consumed by
/// the CLI.
std::string to_string(const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

} // namespace opm
