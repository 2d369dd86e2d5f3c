#ifndef PATHWAVE_ERRORS_HPP
#define PATHWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pathwave {

// Invalid parameter values, malformed specs, out-of-domain states.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or inconsistent configuration documents.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A wave failed to form or to reach the terminal node.
class PropagationError : public std::runtime_error {
public:
    explicit PropagationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure inside the integrator (step-size underflow, invariant breach).
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double last_good_time)
        : std::runtime_error(what), last_good_time(last_good_time) {}
    double last_good_time;
};

} // namespace pathwave

#endif
