#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uhrfrac {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point evaluation requested where a kernel or weight is unbounded.
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iteration or series exceeded its configured budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mesh construction or node-alignment failure.
class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested a stability envelope while the contraction condition fails.
class ContractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Problem configuration could not be loaded or validated.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runtime expression-evaluation failure; carries the source offset of
/// the offending node.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace uhrfrac
