#pragma once

#include <stdexcept>
#include <string>

namespace raidsim {

/// Invalid distribution, configuration or call parameter.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A documented precondition of an operation was violated.
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

/// Inconsistent incident bookkeeping (e.g. a duration longer than the mission).
class AccountingError : public std::logic_error {
public:
    explicit AccountingError(const std::string& what) : std::logic_error(what) {}
};

/// Instance exceeds what an exhaustive routine is allowed to enumerate.
class SizeError : public std::length_error {
public:
    explicit SizeError(const std::string& what) : std::length_error(what) {}
};

/// Numerical integration failed to converge.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace raidsim
