#pragma once

#include <stdexcept>
#include <string>

namespace symperm {

/// Input violates a type invariant or precondition (shape, normalization, range).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string &what) : std::invalid_argument(what) {}
};

/// Input is valid but exceeds a configured size guard (factorial/exponential/memory).
class SizeLimitError : public std::length_error {
public:
    explicit SizeLimitError(const std::string &what) : std::length_error(what) {}
};

/// Argument outside a function's mathematical domain, e.g. log of zero.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string &what) : std::domain_error(what) {}
};

/// Broken internal invariant; reaching this is a bug.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string &what) : std::logic_error(what) {}
};

} // namespace symperm
