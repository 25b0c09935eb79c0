#ifndef MAJCHECK_ERRORS_HPP
#define MAJCHECK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace majcheck {

// Incompatible shapes (matmul, concat, ...).
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input outside the mathematical domain of the operation
// (non-Hermitian where Hermitian is required, negative spectrum, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Caller misuse: bad parameter values, empty lists, out-of-range indices.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Iteration did not converge or a computed result failed its own validation.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested case is outside the supported envelope (e.g. dense nonsymmetric
// eigenproblems above the small-dimension cap).
class UnsupportedError : public std::invalid_argument {
public:
    explicit UnsupportedError(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace majcheck

#endif
