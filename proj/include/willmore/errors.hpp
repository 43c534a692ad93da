#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace willmore {

/// Input outside a declared parameter domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Geometry that violates a curve invariant. `index` names the offending sample.
class GeometryError : public std::runtime_error {
public:
    GeometryError(const std::string& what, std::size_t index) : std::runtime_error(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class RegularityError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Discretization too coarse for the requested operation.
class RefinementRequired : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Malformed input file; `line` is 1-based (0 when unknown).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace willmore
