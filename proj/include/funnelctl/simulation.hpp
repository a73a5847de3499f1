#pragma once

#include "funnelctl/decomposition.hpp"
#include "funnelctl/funnel.hpp"
#include "funnelctl/integrator.hpp"
#include "funnelctl/plants.hpp"

#include <functional>
#include <string>
#include <vector>

namespace funnelctl {

using Signal = std::function<double(double)>;

// Closed-loop vector field ingredients. The state may be larger than a single plant (replay runs).
struct LoopModel {
    int dim = 0;
    std::function<double(const Vec&)> output;
    std::function<double(const Vec&)> state_norm;
    // dx = A x + f(x) + b v, where v is the total input (control plus disturbance).
    std::function<void(const Vec& x, double v, Vec& dx)> dynamics;
    // Boundary nodes held at zero.
    std::function<void(Vec&)> pin;

    static LoopModel from_plant(PlantPtr plant);
};

struct ScenarioConfig {
    std::string name = "custom";
    PlantPtr plant;
    ProductState x0;
    Signal y_ref;
    FunnelSpec funnel;
    Signal disturbance;  // empty means d = 0
    double horizon = 10.0;
    StepControl step;
    double margin_guard = 1e-3;  // fraction of the boundary kept clear at step ends
    std::vector<double> snapshot_times;

    // Throws PreconditionError if the initial error is outside the funnel or the step bounds are inconsistent.
    void validate() const;
    double d(double t) const { return disturbance ? disturbance(t) : 0.0; }
};

struct TrajectorySample {
    double t;
    double y;
    double y_ref;
    double e;
    double boundary;
    double u;
    double k;
    double state_norm;
};

struct Snapshot {
    double t;
    ProductState state;
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    std::vector<Snapshot> snapshots;
    Vec final_state;
    long accepted = 0;
    long rejected = 0;
    long funnel_rejections = 0;
    double eps_min = 0.0;         // min (1/phi - |e|) over accepted samples
    double max_phi_e = 0.0;       // max phi |e|
    double sup_k = 0.0;
    double sup_u = 0.0;
    double sup_y = 0.0;
    double min_dt = 0.0;
    double max_dt = 0.0;
};

struct StepResult {
    bool accepted = false;
    Vec new_state;
    double new_t = 0.0;
    double dt_next = 0.0;
    double error = 0.0;
    std::string reject_reason;
    TrajectorySample log{};
};

// Evaluates the closed-loop right-hand side, u recomputed from the current output error.
class ClosedLoop {
public:
    ClosedLoop(const LoopModel& model, const ScenarioConfig& cfg);

    void rhs(double t, const Vec& x, Vec& dx) const;
    TrajectorySample sample(double t, const Vec& x) const;
    // One embedded step from (t, x). k1 must hold rhs(t, x) on entry unless fresh_k1 is set.
    StepResult step(double t, const Vec& x, double dt, bool fresh_k1 = true);
    RK43Work& work() { return work_; }

private:
    const LoopModel& model_;
    const ScenarioConfig& cfg_;
    RK43Work work_;
};

StepResult step(const Vec& state, double t, double dt, const ScenarioConfig& cfg);

using StepObserver = std::function<void(double t, const Vec& x)>;

TrajectoryRecord simulate(const ScenarioConfig& cfg);
TrajectoryRecord simulate_loop(const LoopModel& model, const Vec& x0, const ScenarioConfig& cfg,
                               const StepObserver& observer = {});

// Fixed-step run; returns y at each requested probe time (must be multiples of dt).
std::vector<double> simulate_fixed_step(const ScenarioConfig& cfg, double dt, const std::vector<double>& probes);

struct EtaTrajectory {
    std::vector<double> t;
    std::vector<double> eta_norm;
    ProductState final_eta;
    double max_orthogonality_drift = 0.0;
    long accepted = 0;
};

struct EtaOptions {
    StepControl step{1e-8, 1e-4, 1e-12, 1e-2, false};
    int reproject_every = 50;
};

EtaTrajectory simulate_eta(const Signal& y, const EtaState& eta0, const Decomposition& ctx, double horizon,
                           const EtaOptions& opts = {});

// Uniformly sampled scalar signal.
struct SampledSignal {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> values;

    double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    static SampledSignal sample(const Signal& s, double t0, double dt, std::size_t n);
};

struct OperatorTResult {
    SampledSignal T;
    std::vector<double> eta_norm;
    double max_orthogonality_drift = 0.0;
};

// Evaluates T(y) on the sample grid of y_hist. The eta-dynamics are integrated interval by interval
// with y linearly interpolated between samples, so the value at sample j depends on samples 0..j only.
OperatorTResult operator_T(const SampledSignal& y_hist, const EtaState& eta0, const Decomposition& ctx,
                           const EtaOptions& opts = {});

}  // namespace funnelctl
