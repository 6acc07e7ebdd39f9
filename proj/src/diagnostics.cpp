#include "opm/diagnostics.hpp"

namespace opm {

const char* to_string(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

std::string to_string(const Diagnostic& d) {
    std::string out = d.code;
    out += ' ';
    out += to_string(d.severity);
    if (d.span) {
        out += ' ';
        out += std::to_string(d.span->line);
        out += ':';
        out += std::to_string(d.span->column);
    }
    if (!d.subject.empty()) {
        out += ' ';
        out += d.subject;
    }
    out += ": ";
    out += d.message;
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    for (const Diagnostic& d : diagnostics)
        if (d.severity == Severity::Error)
            return true;
    return false;
}

} // namespace opm
