#pragma once

#include <stdexcept>
#include <string>

namespace sumrank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotAPrimePower : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class PartitionMismatch : public Error {
public:
    using Error::Error;
};

/// Dimensions violate an operation's precondition (t > m, part < t, ...).
class InvalidDimension : public Error {
public:
    using Error::Error;
};

/// Enumeration would visit more points than the configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// The conditioning event is empty (no matrix of the requested rank exists).
class DegenerateCondition : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace sumrank
