#pragma once

#include <stdexcept>
#include <string>

namespace rftaxis {

// Evaluation requested inside the singular near-field region (< epsilon_floor).
struct DistanceTooSmall : std::runtime_error {
    explicit DistanceTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// Analytic gradient asked for a field with walls or fading enabled.
struct NotSmoothlyDifferentiable : std::runtime_error {
    explicit NotSmoothlyDifferentiable(const std::string& what) : std::runtime_error(what) {}
};

// SNR requested with sigma = 0.
struct ZeroNoise : std::runtime_error {
    explicit ZeroNoise(const std::string& what) : std::runtime_error(what) {}
};

// Least-squares slope undefined (all probe offsets coincide).
struct DegenerateFit : std::runtime_error {
    explicit DegenerateFit(const std::string& what) : std::runtime_error(what) {}
};

// A probe or step target violates field preconditions during an FDSA run.
struct ProbeOutOfDomain : std::runtime_error {
    explicit ProbeOutOfDomain(const std::string& what) : std::runtime_error(what) {}
};

// Rate fit asked for on too few runs.
struct InsufficientEnsemble : std::runtime_error {
    explicit InsufficientEnsemble(const std::string& what) : std::runtime_error(what) {}
};

// Scenario config failed validation; message names the offending field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rftaxis
