#pragma once

#include <stdexcept>
#include <string>

namespace ifacemetrics {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A type expression or method header could not be normalized.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Duplicate type names or a supertype cycle.
class ModelError : public Error {
public:
    using Error::Error;
};

/// A query was made about a type that does not satisfy the operation's
/// precondition (not an interface, not in the bag, not in the model).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid thresholds and similar user-supplied settings.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Java source could not be parsed. Carries the file and 1-based line.
class ParseError : public Error {
public:
    ParseError(std::string path, int line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what),
          path_(std::move(path)),
          line_(line) {}

    const std::string& path() const noexcept { return path_; }
    int line() const noexcept { return line_; }

private:
    std::string path_;
    int line_;
};

/// JSON model violates the schema. `pointer()` is the JSON pointer of the
/// offending node.
class SchemaError : public Error {
public:
    SchemaError(std::string pointer, const std::string& what)
        : Error(pointer + ": " + what), pointer_(std::move(pointer)) {}

    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

}  // namespace ifacemetrics
