#pragma once

#include <stdexcept>
#include <string>

namespace ehq {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation applied to values living on different covers C*_k.
struct LevelMismatchError : Error {
    explicit LevelMismatchError(const std::string& msg) : Error(msg) {}
};

// Balancing condition fails in the relation lattice: the coefficients are
// not p-elliptic.
struct BalancingError : Error {
    explicit BalancingError(const std::string& msg) : Error(msg) {}
};

// The constraint search requires the lattice to be exactly the case-(A) or
// case-(B) balancing lattice.
struct NonGenericLatticeError : Error {
    explicit NonGenericLatticeError(const std::string& msg) : Error(msg) {}
};

struct BudgetExceededError : Error {
    explicit BudgetExceededError(const std::string& msg) : Error(msg) {}
};

struct EmptyDivisorError : Error {
    explicit EmptyDivisorError(const std::string& msg) : Error(msg) {}
};

// Numeric evaluation hit a pole (or came numerically indistinguishable from
// one).
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Numeric parameters outside the window where the integral representation is
// valid.
struct WindowError : Error {
    explicit WindowError(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace ehq
