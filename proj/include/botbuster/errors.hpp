#pragma once

#include <stdexcept>
#include <string>

namespace botbuster {

enum class ErrorCategory {
    Config,
    Ordering,
    Disjointness,
    Merge,
    Parse,
    Io,
    Domain,
    Numerical,
    Usage,
};

inline const char* to_string(ErrorCategory c)
{
    switch (c) {
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Ordering: return "ordering";
    case ErrorCategory::Disjointness: return "disjointness";
    case ErrorCategory::Merge: return "merge";
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::Domain: return "domain";
    case ErrorCategory::Numerical: return "numerical";
    case ErrorCategory::Usage: return "usage";
    }
    return "unknown";
}

/// All library errors carry a machine-parsable category; the CLI prints
/// them as a single `error: <category>: <message>` line.
class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message)
        , category_(category)
    {
    }

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message)
{
    throw Error(category, message);
}

} // namespace botbuster
