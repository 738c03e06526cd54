#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace accelppa {

// Malformed or invalid user input: parse failures, invariant violations,
// infeasible configurations. CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public InputError {
public:
    using InputError::InputError;
};

// A configuration cannot hold the working set of some layer.
class InfeasibleConfig : public ValidationError {
public:
    InfeasibleConfig(std::string layer, std::string resource, const std::string& what)
        : ValidationError(what), layer_(std::move(layer)), resource_(std::move(resource)) {}

    const std::string& layer() const noexcept { return layer_; }
    const std::string& resource() const noexcept { return resource_; }

private:
    std::string layer_;
    std::string resource_;
};

// Regression fitting and model lookup failures. CLI exit code 3.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnderdeterminedFit : public ModelError {
public:
    using ModelError::ModelError;
};

class SingularSystem : public ModelError {
public:
    using ModelError::ModelError;
};

}  // namespace accelppa
