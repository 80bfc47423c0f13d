// errors.hpp — typed failures; the sweep layer records them per grid point by tag

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace paircav {

// Base for every failure the library raises on purpose. The tag is a stable
// machine-readable name that ends up in the `error` column of sweep datasets.
class Error : public std::runtime_error {
public:
    Error(std::string tag, const std::string& what)
        : std::runtime_error(what), tag_(std::move(tag)) {}
    const std::string& tag() const noexcept { return tag_; }

private:
    std::string tag_;
};

struct InvalidDimension : Error {
    explicit InvalidDimension(const std::string& w) : Error("invalid-dimension", w) {}
};

struct InvalidLabel : Error {
    explicit InvalidLabel(const std::string& w) : Error("invalid-label", w) {}
};

struct IndexError : Error {
    explicit IndexError(const std::string& w) : Error("index-error", w) {}
};

struct SingularParameter : Error {
    explicit SingularParameter(const std::string& w) : Error("singular-parameter", w) {}
};

struct NonUniqueSteadyState : Error {
    explicit NonUniqueSteadyState(const std::string& w) : Error("non-unique-steady-state", w) {}
};

struct TruncationTooSmall : Error {
    explicit TruncationTooSmall(const std::string& w) : Error("truncation-too-small", w) {}
};

struct IntegrationError : Error {
    explicit IntegrationError(const std::string& w) : Error("integration-error", w) {}
};

struct UndefinedCorrelation : Error {
    explicit UndefinedCorrelation(const std::string& w) : Error("undefined-correlation", w) {}
};

struct StaleState : Error {
    explicit StaleState(const std::string& w) : Error("stale-state", w) {}
};

struct ResonantDegeneracy : Error {
    explicit ResonantDegeneracy(const std::string& w) : Error("resonant-degeneracy", w) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error("config-error", w) {}
};

struct UnknownPreset : Error {
    explicit UnknownPreset(const std::string& w) : Error("unknown-preset", w) {}
};

}  // namespace paircav
