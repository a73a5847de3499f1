#include "funnelctl/errors.hpp"

#include <sstream>

namespace funnelctl {

namespace {
std::string violation_message(double t, double e, double boundary) {
    std::ostringstream os;
    os.precision(10);
    os << "funnel violation at t=" << t << ": |e|=" << (e < 0 ? -e : e) << " >= boundary " << boundary;
    return os.str();
}

std::string simulation_message(const std::string& what, double t, double dt, const std::string& detail) {
    std::ostringstream os;
    os.precision(10);
    os << what << " (t=" << t << ", dt=" << dt << ")";
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}
}  // namespace

FunnelViolation::FunnelViolation(double t_, double e_, double boundary_)
    : std::runtime_error(violation_message(t_, e_, boundary_)), t(t_), e(e_), boundary(boundary_) {}

SimulationError::SimulationError(const std::string& what, double t_, double dt_, std::string detail_)
    : std::runtime_error(simulation_message(what, t_, dt_, detail_)), t(t_), dt(dt_), detail(std::move(detail_)) {}

}  // namespace funnelctl
