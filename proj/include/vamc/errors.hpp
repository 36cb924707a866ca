#pragma once

#include <stdexcept>
#include <string>

namespace vamc {

// Broken preconditions (mismatched dimensions, empty masks, overflowing vectors).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Pixel outside the domain of the inverse fisheye projection (r_f > 2f).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Incident angle too close to pi/2 for a perspective projection.
class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CompressorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vamc
