#pragma once

#include "funnelctl/errors.hpp"
#include "funnelctl/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace funnelctl {

struct StepControl {
    double tol = 1e-6;
    double dt_init = 1e-3;
    double dt_min = 1e-9;
    double dt_max = 1e-2;
    bool fixed_step = false;

    void validate() const;
};

// Classical RK4 with the FSAL third-order companion
//   x3 = x + dt (k1/6 + k2/3 + k3/3 + k5/6),  k5 = F(t + dt, x4),
// so the error estimate is dt/6 (k4 - k5) and k5 is reused as the next k1.
struct RK43Work {
    Vec k1, k2, k3, k4, k5, stage, x4;

    void resize(Eigen::Index n) {
        for (Vec* v : {&k1, &k2, &k3, &k4, &k5, &stage, &x4}) v->resize(n);
    }
};

// Requires w.k1 = F(t, x). Leaves the fourth-order solution in w.x4 and F(t + dt, x4) in w.k5.
// Exceptions thrown by F propagate. Returns the scaled error norm.
template <class Rhs>
double rk43_attempt(Rhs&& rhs, double t, const Vec& x, double dt, RK43Work& w) {
    w.stage = x + (0.5 * dt) * w.k1;
    rhs(t + 0.5 * dt, w.stage, w.k2);
    w.stage = x + (0.5 * dt) * w.k2;
    rhs(t + 0.5 * dt, w.stage, w.k3);
    w.stage = x + dt * w.k3;
    rhs(t + dt, w.stage, w.k4);
    w.x4 = x + (dt / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
    rhs(t + dt, w.x4, w.k5);
    double err = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double scale = 1.0 + std::max(std::abs(x[i]), std::abs(w.x4[i]));
        err = std::max(err, std::abs(dt / 6.0 * (w.k4[i] - w.k5[i])) / scale);
    }
    if (!std::isfinite(err) || !w.x4.allFinite()) return std::numeric_limits<double>::infinity();
    return err;
}

inline double next_step_size(double dt, double err, const StepControl& c) {
    if (c.fixed_step) return dt;
    const double factor = err > 0.0 ? 0.9 * std::pow(c.tol / err, 0.25) : 2.0;
    return std::clamp(dt * std::clamp(factor, 0.5, 2.0), c.dt_min, c.dt_max);
}

// Adaptive integration of x' = F(t, x) from t0 to t1 (no funnel logic).
// on_accept(t, x) runs after every accepted step and may adjust x (e.g. re-projection).
// dt carries the suggested step across calls.
template <class Rhs, class OnAccept>
void integrate_adaptive(Rhs&& rhs, double t0, double t1, Vec& x, double& dt, const StepControl& c,
                        RK43Work& w, OnAccept&& on_accept) {
    w.resize(x.size());
    double t = t0;
    rhs(t, x, w.k1);
    while (t < t1) {
        const double remaining = t1 - t;
        const bool last = dt >= remaining * (1.0 - 1e-12);
        const double h = last ? remaining : dt;
        const double err = rk43_attempt(rhs, t, x, h, w);
        if (c.fixed_step || err <= c.tol) {
            t = last ? t1 : t + h;
            x = w.x4;
            std::swap(w.k1, w.k5);
            if (!last || h >= dt) dt = next_step_size(h, err, c);
            on_accept(t, x);
        } else {
            dt = 0.5 * h;
            if (dt < c.dt_min) throw SimulationError("step size underflow", t, dt, "local error test keeps failing");
        }
    }
}

}  // namespace funnelctl
