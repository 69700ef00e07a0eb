// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace qfim {

// Bloch vector outside the unit ball / non-physical density matrix.
class PhysicalityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Adaptive integration could not proceed; carries the time actually reached.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double reached_time)
        : std::runtime_error(what), reached_time_(reached_time) {}

    double reached_time() const noexcept { return reached_time_; }

private:
    double reached_time_;
};

// Requested the attractor of purely unitary dynamics (A = 0).
class NoSteadyStateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A nominally pure state whose parameter derivative moves |w| off the sphere.
class InconsistentDerivativeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Effective decay rate is zero: QFI grows without bound, no finite optimum.
class ShieldedRegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace qfim
