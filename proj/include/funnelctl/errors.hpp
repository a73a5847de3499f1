#pragma once

#include <stdexcept>
#include <string>

namespace funnelctl {

// Inconsistent shapes or grids between operands.
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when phi(t)|e| >= 1. Carries the offending sample.
class FunnelViolation : public std::runtime_error {
public:
    FunnelViolation(double t, double e, double boundary);

    double t;
    double e;
    double boundary;
};

// Integrator could not make progress (step size underflow, non-finite state).
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, double t, double dt, std::string detail = {});

    double t;
    double dt;
    std::string detail;
};

}  // namespace funnelctl
