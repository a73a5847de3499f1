#include "funnelctl/funnel.hpp"

#include "funnelctl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace funnelctl {

FunnelSpec FunnelSpec::exp_offset(double a, double lambda, double offset) {
    if (!(a >= 0.0 && lambda >= 0.0 && offset > 0.0))
        throw PreconditionError("exp-offset funnel needs a >= 0, lambda >= 0, offset > 0");
    FunnelSpec s;
    s.boundary = [a, lambda, offset](double t) { return a * std::exp(-lambda * t) + offset; };
    s.phi = [a, lambda, offset](double t) { return 1.0 / (a * std::exp(-lambda * t) + offset); };
    s.phi_bound = 1.0 / offset;
    // phi' = a lambda e / (a e + offset)^2 with e = exp(-lambda t); maximal at a e = offset.
    s.phi_dot_bound = a > 0.0 ? lambda / (4.0 * offset) : 0.0;
    s.phi_inf = 1.0 / (a + offset);
    std::ostringstream os;
    os.precision(17);
    os << "exp-offset(a=" << a << ", lambda=" << lambda << ", offset=" << offset << ")";
    s.description = os.str();
    return s;
}

FunnelSpec FunnelSpec::from_callable(std::function<double(double)> phi, double phi_bound, double phi_dot_bound,
                                     double phi_inf, std::string description) {
    FunnelSpec s;
    s.phi = phi;
    s.boundary = [phi](double t) { return 1.0 / phi(t); };
    s.phi_bound = phi_bound;
    s.phi_dot_bound = phi_dot_bound;
    s.phi_inf = phi_inf;
    s.description = std::move(description);
    return s;
}

ControlOutput control(double t, double e, const FunnelSpec& spec) {
    const double phi = spec.phi(t);
    const double s = phi * std::abs(e);
    if (!(s < 1.0)) throw FunnelViolation(t, e, 1.0 / phi);
    const double k = 1.0 / (1.0 - s * s);
    return {-k * e, k};
}

double membership_margin(double t, double e, const FunnelSpec& spec) { return spec.boundary(t) - std::abs(e); }

FunnelValidation validate_spec(const FunnelSpec& spec, double horizon, int samples) {
    constexpr double fd_step = 1e-4;
    FunnelValidation r;
    r.tail_min_phi = INFINITY;
    auto fail = [&r](std::string why, double t) {
        if (r.pass) {
            r.pass = false;
            r.reason = std::move(why);
            r.offending_t = t;
        }
    };
    if (!(spec.phi_inf > 0.0)) fail("declared tail lower bound must be positive", 0.0);
    const int n = std::max(samples, 2);
    for (int i = 0; i < n; ++i) {
        const double t = horizon * i / (n - 1);
        const double p = spec.phi(t);
        if (!std::isfinite(p) || !(p > 0.0)) {
            fail("phi is not positive and finite", t);
            continue;
        }
        r.max_phi = std::max(r.max_phi, p);
        if (p > spec.phi_bound * (1.0 + 1e-9)) fail("phi exceeds its declared bound", t);
        const double dot = t >= fd_step ? (spec.phi(t + fd_step) - spec.phi(t - fd_step)) / (2.0 * fd_step)
                                        : (spec.phi(t + fd_step) - p) / fd_step;
        r.max_phi_dot = std::max(r.max_phi_dot, std::abs(dot));
        if (std::abs(dot) > spec.phi_dot_bound * (1.0 + 1e-3) + 1e-9) fail("phi' exceeds its declared bound", t);
        if (t >= horizon / 2.0) {
            r.tail_min_phi = std::min(r.tail_min_phi, p);
            if (p < spec.phi_inf) fail("phi drops below the declared tail lower bound", t);
        }
    }
    return r;
}

ControlOutput ControllerState::update(double t, double e, const FunnelSpec& spec) {
    try {
        const ControlOutput out = control(t, e, spec);
        last_gain = out.k;
        last_error = e;
        return out;
    } catch (const FunnelViolation&) {
        ++violations;
        throw;
    }
}

}  // namespace funnelctl
