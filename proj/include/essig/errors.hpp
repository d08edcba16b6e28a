#pragma once

#include <stdexcept>
#include <string>

namespace essig {

/// Caller passed arguments that violate an operation's preconditions
/// (mismatched shapes, out-of-range words, bad dimensions).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inverse requested for a tensor whose level-0 coefficient is zero.
class SingularElement : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A point lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed input data (files, JSON, numeric literals).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace essig
