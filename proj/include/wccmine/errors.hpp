#pragma once

#include <stdexcept>
#include <string>

namespace wccmine {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data: files, records, unknown items.
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
};

// Invalid configuration or arguments to an operation.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what) {}
};

// Enumeration would exceed the configured pair budget.
class BudgetExceededError : public Error {
public:
    explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

} // namespace wccmine
