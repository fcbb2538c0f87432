#pragma once

#include <stdexcept>
#include <string>

namespace telic {

struct TelicError : std::runtime_error {
    explicit TelicError(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownHistoryError : TelicError {
    explicit UnknownHistoryError(const std::string& prefix)
        : TelicError("unknown history: \"" + prefix + "\""), prefix(prefix) {}
    std::string prefix;
};

struct EnumerationTooLargeError : TelicError {
    explicit EnumerationTooLargeError(const std::string& what) : TelicError(what) {}
};

struct NoSamplesError : TelicError {
    NoSamplesError() : TelicError("no samples") {}
};

struct StateNotFoundError : TelicError {
    explicit StateNotFoundError(const std::string& label)
        : TelicError("state not found in search domain: " + label) {}
};

struct NoSplitNeededError : TelicError {
    explicit NoSplitNeededError(const std::string& label)
        : TelicError("no split needed: " + label) {}
};

struct SplitCollisionError : TelicError {
    explicit SplitCollisionError(const std::string& what)
        : TelicError("split collision: " + what) {}
};

struct SplitCollapseError : TelicError {
    explicit SplitCollapseError(const std::string& what)
        : TelicError("split produced no new state: " + what) {}
};

struct DivergentStartError : TelicError {
    DivergentStartError() : TelicError("divergent start") {}
};

struct GradientOverflowError : TelicError {
    explicit GradientOverflowError(const std::string& what)
        : TelicError("gradient overflow: " + what) {}
};

struct ConfigError : TelicError {
    explicit ConfigError(const std::string& what) : TelicError(what) {}
};

}  // namespace telic
