#pragma once

#include <functional>
#include <optional>
#include <string>

namespace funnelctl {

struct FunnelSpec {
    std::function<double(double)> phi;
    std::function<double(double)> boundary;  // 1 / phi
    double phi_bound = 0.0;      // declared sup phi
    double phi_dot_bound = 0.0;  // declared sup |phi'|
    double phi_inf = 0.0;        // declared lower bound of phi on the tail
    std::string description;

    // 1/phi(t) = a exp(-lambda t) + offset.
    static FunnelSpec exp_offset(double a, double lambda, double offset);
    static FunnelSpec from_callable(std::function<double(double)> phi, double phi_bound, double phi_dot_bound,
                                    double phi_inf, std::string description = "callable");
};

struct ControlOutput {
    double u;
    double k;
};

ControlOutput control(double t, double e, const FunnelSpec& spec);
double membership_margin(double t, double e, const FunnelSpec& spec);

struct FunnelValidation {
    bool pass = true;
    std::string reason;
    std::optional<double> offending_t;
    double max_phi = 0.0;
    double max_phi_dot = 0.0;
    double tail_min_phi = 0.0;
};

// Checks positivity, declared bounds on phi and a central-difference phi', and the tail lower bound,
// on `samples` equispaced points of [0, horizon].
FunnelValidation validate_spec(const FunnelSpec& spec, double horizon, int samples);

struct ControllerState {
    double last_gain = 1.0;
    double last_error = 0.0;
    long violations = 0;

    // Evaluates the law and records the outcome; violations are counted and rethrown.
    ControlOutput update(double t, double e, const FunnelSpec& spec);
};

}  // namespace funnelctl
