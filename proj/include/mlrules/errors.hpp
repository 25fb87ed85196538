#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlrules {

/// Malformed user input or configuration. Maps to CLI exit code 1.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A library call whose documented precondition does not hold.
class precondition_error : public validation_error {
public:
    using validation_error::validation_error;
};

/// Dataset or document text that cannot be parsed; carries the offending cell.
class parse_error : public validation_error {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& what)
        : validation_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column), reason_(what) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    /// The message without the location prefix.
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string reason_;
};

/// File system failures. Maps to CLI exit code 2.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Something the engine guarantees never happens did happen. Maps to CLI exit code 3.
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace mlrules
