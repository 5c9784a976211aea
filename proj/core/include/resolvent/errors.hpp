#pragma once

#include <stdexcept>
#include <string>

namespace resolvent {

/// Input outside the mathematical domain of an operation (negative radius, non-finite energy).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Energy too close to a branch point of one of the momenta (E = 0 or E = V in some region).
class BranchPointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller violated a documented precondition.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Kernel denominator vanishes.
class PoleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Singular interface (zero momentum on the side being solved for).
class DegenerateInstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace resolvent
