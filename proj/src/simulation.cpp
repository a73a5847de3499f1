#include "funnelctl/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace funnelctl {

void StepControl::validate() const {
    if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
    if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max))
        throw PreconditionError("step bounds must satisfy 0 < dt_min <= dt_init <= dt_max");
}

LoopModel LoopModel::from_plant(PlantPtr plant) {
    LoopModel m;
    m.dim = plant->dim();
    auto scratch = std::make_shared<Vec>(plant->dim());
    const Grid& g = *plant->grid;
    m.output = [plant, &g](const Vec& x) { return inner_raw(plant->inner_kind, g, x, plant->c.data()); };
    m.state_norm = [plant, &g](const Vec& x) {
        return std::sqrt(std::max(0.0, inner_raw(plant->inner_kind, g, x, x)));
    };
    m.dynamics = [plant, scratch](const Vec& x, double v, Vec& dx) {
        plant->A(x, dx);
        plant->f(x, *scratch);
        dx += *scratch + v * plant->b.data();
    };
    m.pin = [plant](Vec& v) { plant->pin(v); };
    return m;
}

void ScenarioConfig::validate() const {
    if (!plant) throw PreconditionError("scenario has no plant");
    if (!y_ref) throw PreconditionError("scenario has no reference signal");
    if (!funnel.phi) throw PreconditionError("scenario has no funnel");
    if (!(horizon > 0.0)) throw PreconditionError("horizon must be positive");
    step.validate();
    if (!(margin_guard >= 0.0 && margin_guard < 1.0)) throw PreconditionError("margin guard must lie in [0, 1)");
    if (x0.data().size() != plant->dim()) throw StructuralError("initial state does not match the plant grid");
    const double e0 = plant->output(x0) - y_ref(0.0);
    const double s = funnel.phi(0.0) * std::abs(e0);
    if (!(s < 1.0)) {
        std::ostringstream os;
        os << "initial error " << e0 << " lies outside the funnel (phi(0)|e(0)| = " << s << ")";
        throw PreconditionError(os.str());
    }
}

ClosedLoop::ClosedLoop(const LoopModel& model, const ScenarioConfig& cfg) : model_(model), cfg_(cfg) {
    work_.resize(model.dim);
}

void ClosedLoop::rhs(double t, const Vec& x, Vec& dx) const {
    const double e = model_.output(x) - cfg_.y_ref(t);
    const ControlOutput c = control(t, e, cfg_.funnel);
    model_.dynamics(x, c.u + cfg_.d(t), dx);
    model_.pin(dx);
}

TrajectorySample ClosedLoop::sample(double t, const Vec& x) const {
    TrajectorySample s{};
    s.t = t;
    s.y = model_.output(x);
    s.y_ref = cfg_.y_ref(t);
    s.e = s.y - s.y_ref;
    s.boundary = cfg_.funnel.boundary(t);
    const ControlOutput c = control(t, s.e, cfg_.funnel);
    s.u = c.u;
    s.k = c.k;
    s.state_norm = model_.state_norm(x);
    return s;
}

StepResult ClosedLoop::step(double t, const Vec& x, double dt, bool fresh_k1) {
    StepResult r;
    r.new_t = t;
    auto f = [this](double tt, const Vec& xx, Vec& dx) { rhs(tt, xx, dx); };
    if (fresh_k1) f(t, x, work_.k1);
    try {
        r.error = rk43_attempt(f, t, x, dt, work_);
    } catch (const FunnelViolation& v) {
        r.reject_reason = v.what();
        r.dt_next = 0.5 * dt;
        return r;
    }
    if (!cfg_.step.fixed_step && !(r.error <= cfg_.step.tol)) {
        r.reject_reason = "local error above tolerance";
        r.dt_next = 0.5 * dt;
        return r;
    }
    const double t_new = t + dt;
    const double e = model_.output(work_.x4) - cfg_.y_ref(t_new);
    if (cfg_.funnel.phi(t_new) * std::abs(e) > 1.0 - cfg_.margin_guard) {
        r.reject_reason = "step ends inside the funnel margin guard";
        r.dt_next = 0.5 * dt;
        return r;
    }
    r.accepted = true;
    r.new_t = t_new;
    r.new_state = work_.x4;
    r.dt_next = next_step_size(dt, r.error, cfg_.step);
    r.log = sample(t_new, work_.x4);
    return r;
}

StepResult step(const Vec& state, double t, double dt, const ScenarioConfig& cfg) {
    const LoopModel model = LoopModel::from_plant(cfg.plant);
    ClosedLoop loop(model, cfg);
    return loop.step(t, state, dt, true);
}

namespace {

void record_sample(TrajectoryRecord& rec, const TrajectorySample& s, double phi) {
    rec.samples.push_back(s);
    rec.eps_min = std::min(rec.eps_min, s.boundary - std::abs(s.e));
    rec.max_phi_e = std::max(rec.max_phi_e, phi * std::abs(s.e));
    rec.sup_k = std::max(rec.sup_k, s.k);
    rec.sup_u = std::max(rec.sup_u, std::abs(s.u));
    rec.sup_y = std::max(rec.sup_y, std::abs(s.y));
}

}  // namespace

TrajectoryRecord simulate_loop(const LoopModel& model, const Vec& x0, const ScenarioConfig& cfg,
                               const StepObserver& observer) {
    cfg.validate();
    ClosedLoop loop(model, cfg);
    TrajectoryRecord rec;
    rec.eps_min = INFINITY;
    rec.min_dt = INFINITY;

    std::vector<double> stops;
    for (double s : cfg.snapshot_times)
        if (s > 0.0 && s < cfg.horizon) stops.push_back(s);
    stops.push_back(cfg.horizon);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
    auto is_snapshot = [&cfg](double t) {
        return std::find(cfg.snapshot_times.begin(), cfg.snapshot_times.end(), t) != cfg.snapshot_times.end();
    };

    Vec x = x0;
    model.pin(x);
    double t = 0.0;
    double dt = cfg.step.dt_init;
    record_sample(rec, loop.sample(t, x), cfg.funnel.phi(t));
    if (is_snapshot(0.0)) rec.snapshots.push_back({0.0, ProductState(cfg.plant->grid, x.head(cfg.plant->dim()))});
    if (observer) observer(t, x);
    loop.rhs(t, x, loop.work().k1);

    std::size_t next = 0;
    while (next < stops.size()) {
        const double target = stops[next];
        const double remaining = target - t;
        const bool landing = dt >= remaining * (1.0 - 1e-12);
        const double h = landing ? remaining : dt;
        StepResult r = loop.step(t, x, h, false);
        if (!r.accepted) {
            ++rec.rejected;
            if (r.reject_reason.rfind("funnel", 0) == 0 || r.reject_reason.find("margin") != std::string::npos)
                ++rec.funnel_rejections;
            dt = r.dt_next;
            if (dt < cfg.step.dt_min) {
                std::ostringstream os;
                os.precision(10);
                const TrajectorySample& last = rec.samples.back();
                os << r.reject_reason << "; last accepted e=" << last.e << ", k=" << last.k
                   << ", boundary=" << last.boundary << ", accepted=" << rec.accepted << ", rejected=" << rec.rejected;
                throw SimulationError("step size fell below dt_min", t, dt, os.str());
            }
            continue;
        }
        ++rec.accepted;
        rec.min_dt = std::min(rec.min_dt, h);
        rec.max_dt = std::max(rec.max_dt, h);
        t = landing ? target : r.new_t;
        x = std::move(r.new_state);
        std::swap(loop.work().k1, loop.work().k5);
        if (!(landing && h < dt)) dt = r.dt_next;
        r.log.t = t;
        record_sample(rec, r.log, cfg.funnel.phi(t));
        if (observer) observer(t, x);
        if (landing) {
            if (is_snapshot(t)) rec.snapshots.push_back({t, ProductState(cfg.plant->grid, x.head(cfg.plant->dim()))});
            ++next;
        }
    }
    rec.final_state = x;
    return rec;
}

TrajectoryRecord simulate(const ScenarioConfig& cfg) {
    cfg.validate();
    const LoopModel model = LoopModel::from_plant(cfg.plant);
    return simulate_loop(model, cfg.x0.data(), cfg);
}

std::vector<double> simulate_fixed_step(const ScenarioConfig& cfg, double dt, const std::vector<double>& probes) {
    cfg.validate();
    const LoopModel model = LoopModel::from_plant(cfg.plant);
    ClosedLoop loop(model, cfg);
    auto f = [&loop](double tt, const Vec& xx, Vec& dx) { loop.rhs(tt, xx, dx); };
    Vec x = cfg.x0.data();
    model.pin(x);
    double t_end = 0.0;
    for (double p : probes) t_end = std::max(t_end, p);
    const long n = std::lround(t_end / dt);
    std::vector<double> out(probes.size(), NAN);
    auto capture = [&](long i) {
        for (std::size_t j = 0; j < probes.size(); ++j)
            if (std::lround(probes[j] / dt) == i) out[j] = model.output(x);
    };
    capture(0);
    RK43Work& w = loop.work();
    // Compensated accumulation of the increments keeps round-off well below the truncation error.
    Vec carry = Vec::Zero(x.size());
    Vec incr(x.size());
    for (long i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        try {
            f(t, x, w.k1);
            rk43_attempt(f, t, x, dt, w);
        } catch (const FunnelViolation& v) {
            throw SimulationError("fixed-step run left the funnel", t, dt, v.what());
        }
        incr = (dt / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4) - carry;
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double sum = x[j] + incr[j];
            carry[j] = (sum - x[j]) - incr[j];
            x[j] = sum;
        }
        capture(i + 1);
    }
    return out;
}

EtaTrajectory simulate_eta(const Signal& y, const EtaState& eta0, const Decomposition& ctx, double horizon,
                           const EtaOptions& opts) {
    opts.step.validate();
    const PlantPtr& plant = ctx.plant_ptr();
    const GridPtr& grid = plant->grid;
    EtaTrajectory out;
    auto rhs = [&](double t, const Vec& eta, Vec& deta) {
        deta = ctx.eta_rhs(y(t), EtaState{ProductState(grid, eta)}).value.data();
    };
    Vec x = eta0.value.data();
    out.t.push_back(0.0);
    out.eta_norm.push_back(plant->norm(eta0.value));
    double dt = opts.step.dt_init;
    RK43Work w;
    long count = 0;
    integrate_adaptive(rhs, 0.0, horizon, x, dt, opts.step, w, [&](double t, Vec& eta) {
        ++count;
        if (opts.reproject_every > 0 && count % opts.reproject_every == 0) {
            ProductState s(grid, eta);
            out.max_orthogonality_drift = std::max(out.max_orthogonality_drift, ctx.orthogonality_defect(s));
            eta = ctx.project_Pperp(s).value.data();
        }
        out.t.push_back(t);
        out.eta_norm.push_back(plant->norm(ProductState(grid, eta)));
    });
    ProductState fin(grid, x);
    out.max_orthogonality_drift = std::max(out.max_orthogonality_drift, ctx.orthogonality_defect(fin));
    out.final_eta = fin;
    out.accepted = count;
    return out;
}

SampledSignal SampledSignal::sample(const Signal& s, double t0, double dt, std::size_t n) {
    SampledSignal out{t0, dt, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) out.values[i] = s(out.time(i));
    return out;
}

OperatorTResult operator_T(const SampledSignal& y_hist, const EtaState& eta0, const Decomposition& ctx,
                           const EtaOptions& opts) {
    opts.step.validate();
    if (!(y_hist.dt > 0.0) || y_hist.values.empty()) throw PreconditionError("sampled signal needs dt > 0 and samples");
    const PlantPtr& plant = ctx.plant_ptr();
    const GridPtr& grid = plant->grid;
    const std::size_t n = y_hist.values.size();
    OperatorTResult out;
    out.T = SampledSignal{y_hist.t0, y_hist.dt, std::vector<double>(n)};
    out.eta_norm.resize(n);

    Vec x = eta0.value.data();
    double dt = opts.step.dt_init;
    RK43Work w;
    long count = 0;
    for (std::size_t j = 0; j < n; ++j) {
        ProductState eta(grid, x);
        out.T.values[j] = ctx.output_drift(y_hist.values[j], EtaState{eta});
        out.eta_norm[j] = plant->norm(eta);
        out.max_orthogonality_drift = std::max(out.max_orthogonality_drift, ctx.orthogonality_defect(eta));
        if (j + 1 == n) break;
        const double ta = y_hist.time(j);
        const double ya = y_hist.values[j];
        const double slope = (y_hist.values[j + 1] - ya) / y_hist.dt;
        auto rhs = [&](double t, const Vec& e, Vec& de) {
            de = ctx.eta_rhs(ya + slope * (t - ta), EtaState{ProductState(grid, e)}).value.data();
        };
        try {
            integrate_adaptive(rhs, ta, y_hist.time(j + 1), x, dt, opts.step, w, [&](double, Vec& e) {
                if (opts.reproject_every > 0 && ++count % opts.reproject_every == 0)
                    e = ctx.project_Pperp(ProductState(grid, e)).value.data();
            });
        } catch (const SimulationError& err) {
            throw SimulationError("operator T integration failed", err.t, err.dt, err.detail);
        }
    }
    return out;
}

}  // namespace funnelctl
