#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace susd {

// Thrown when a math kernel receives input it cannot work on
// (covariance with fewer than two points, eigengap below tolerance, ...).
struct DegenerateInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a scenario or simulation configuration is invalid
// (isolated agent with a formation gain, bad agent count, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when integration produces a non-finite state; carries the step index.
struct NumericalError : std::runtime_error {
    std::size_t step;
    NumericalError(const std::string& msg, std::size_t step_index)
        : std::runtime_error(msg + " at step " + std::to_string(step_index)), step(step_index) {}
};

// Thrown on unreadable or malformed scenario/log files.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace susd
