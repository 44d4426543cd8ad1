#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace synarch {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed corpus syntax. `line` and `column` are 1-based; 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Structural invariant violations; carries every offender, not only the first.
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::vector<std::string> offenders)
        : Error(what), offenders_(std::move(offenders)) {}

    const std::vector<std::string>& offenders() const noexcept { return offenders_; }

private:
    std::vector<std::string> offenders_;
};

/// Duplicate page id, category id or title.
class UniquenessError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Unknown page, title or category. May carry nearest-title suggestions.
class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& what, std::vector<std::string> suggestions = {})
        : Error(what), suggestions_(std::move(suggestions)) {}

    const std::vector<std::string>& suggestions() const noexcept { return suggestions_; }

private:
    std::vector<std::string> suggestions_;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

} // namespace synarch
