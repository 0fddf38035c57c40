#pragma once

#include <stdexcept>
#include <string>

namespace plausia {

/// Base class for all contract violations raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A value was used with a domain of a different kind (scalar vs pair,
/// off-grid rational, component outside [0,1], ...).
struct DomainMismatchError : Error {
    explicit DomainMismatchError(const std::string& msg) : Error(msg) {}
};

/// Multiplication requested on a domain that does not declare one.
struct NoMultiplicationError : Error {
    explicit NoMultiplicationError(const std::string& msg) : Error(msg) {}
};

struct UnknownAgentError : Error {
    explicit UnknownAgentError(const std::string& msg) : Error(msg) {}
};

struct UnknownStateError : Error {
    explicit UnknownStateError(const std::string& msg) : Error(msg) {}
};

/// A belief operator turned out to be non-monotone mid-fixpoint (possible
/// only for explicit-table measures that break CP3).
struct MonotonicityError : Error {
    explicit MonotonicityError(const std::string& msg) : Error(msg) {}
};

/// Brute-force oracle invoked beyond its state-count cap.
struct SizeCapError : Error {
    explicit SizeCapError(const std::string& msg) : Error(msg) {}
};

}  // namespace plausia
