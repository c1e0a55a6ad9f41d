#pragma once

#include <stdexcept>

namespace sumset {

/// Argument outside the mathematical domain of an operation (p not in (0,1), n > 2N, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inputs that are individually valid but inconsistent with each other.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Work or memory guard exceeded (oracle size, Monte Carlo budget, iteration caps).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sumset
