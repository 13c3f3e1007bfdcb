#pragma once

#include <stdexcept>
#include <string>

namespace vbp {

/// Bad user input: malformed text, inconsistent configuration, shape
/// mismatches between a network and its data. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse failure with a 0-based character position into the source text.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t position)
        : ValidationError(what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Singular systems, non-finite training state. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vbp
