#include "funnelctl/analysis.hpp"

#include "funnelctl/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <random>

namespace funnelctl {

using std::numbers::pi;

namespace {

// Smooth profile vanishing at z = 0: sum_j a_j sin((j - 1/2) pi z) / j.
struct Profile {
    std::array<double, 6> a{};

    static Profile draw(std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Profile p;
        for (double& v : p.a) v = u(rng);
        return p;
    }
    double operator()(double z) const {
        double s = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::sin((j + 0.5) * pi * z) / (j + 1.0);
        return s;
    }
};

ProductState draw_state(std::mt19937_64& rng, const GridPtr& grid) {
    const Profile p1 = Profile::draw(rng);
    const Profile p2 = Profile::draw(rng);
    ProductState s = ProductState::sample(grid, p1, p2);
    s.data()[0] = 0.0;
    s.data()[grid->m()] = 0.0;
    return s;
}

std::vector<int> free_indices(int m) {
    std::vector<int> idx;
    for (int k = 0; k < 2; ++k)
        for (int i = 1; i < m; ++i) idx.push_back(k * m + i);
    return idx;
}

Vec embed(const Vec& free, const std::vector<int>& idx, int dim) {
    Vec full = Vec::Zero(dim);
    for (std::size_t j = 0; j < idx.size(); ++j) full[idx[j]] = free[static_cast<Eigen::Index>(j)];
    return full;
}

Vec restrict_to(const Vec& full, const std::vector<int>& idx) {
    Vec free(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) free[static_cast<Eigen::Index>(j)] = full[idx[j]];
    return free;
}

// Gram matrix of the plant inner product on the free coordinates (both products are at most tridiagonal).
Eigen::MatrixXd gram_matrix(const SemilinearPlant& plant, const std::vector<int>& idx) {
    const int n = static_cast<int>(idx.size());
    const int dim = plant.dim();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j) {
            Vec ei = Vec::Zero(dim), ej = Vec::Zero(dim);
            ei[idx[i]] = 1.0;
            ej[idx[j]] = 1.0;
            G(i, j) = inner_raw(plant.inner_kind, *plant.grid, ei, ej);
        }
    return G;
}

double max_real(const Eigen::VectorXcd& ev) {
    double r = -INFINITY;
    for (const auto& z : ev) r = std::max(r, z.real());
    return r;
}

bool nonincreasing(const std::vector<double>& v, double floor = 0.0) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] && !(v[i] <= floor && v[i - 1] <= floor)) return false;
    return true;
}

}  // namespace

LyapunovReport lyapunov_check_reactor(const GridPtr& grid, const ReactorParams& p, int samples, std::uint64_t seed,
                                      double tol) {
    if (samples < 1) throw PreconditionError("lyapunov check needs at least one sample");
    Decomposition ctx(build_reactor(p, grid));
    const SemilinearPlant& plant = ctx.plant();
    const int m = grid->m();
    LyapunovReport r;
    r.plant = "reactor";
    r.m = m;
    r.samples = samples;
    r.seed = seed;
    r.tol = tol;
    r.max_excess = -INFINITY;
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        const EtaState eta = ctx.project_Pperp(draw_state(rng, grid));
        const ProductState q = ctx.apply_Q(eta).value;
        ProductState weighted = eta.value;
        weighted.first() /= 2.0 * p.beta;
        for (int i = 0; i < m; ++i) weighted.second()[i] *= 1.0 - grid->z(i);
        const double n2 = plant.inner(eta.value, eta.value);
        const double val = 2.0 * plant.inner(q, weighted) + n2;
        const double eta1_end = eta.value.first()[m - 1];
        const double continuum = -eta1_end * eta1_end / (2.0 * p.beta);
        const double second = 2.0 * inner_l2(*grid, q.second(), weighted.second()) +
                              inner_l2(*grid, eta.value.second(), eta.value.second());
        r.max_excess = std::max(r.max_excess, val / n2);
        r.max_defect = std::max(r.max_defect, std::abs(val - continuum) / n2);
        r.second_block_defect = std::max(r.second_block_defect, std::abs(second) / n2);
    }
    r.pass = r.max_excess <= tol;
    return r;
}

LyapunovReport lyapunov_check_sine_gordon(const GridPtr& grid, const SineGordonParams& p, int samples,
                                          std::uint64_t seed, double tol) {
    if (samples < 1) throw PreconditionError("lyapunov check needs at least one sample");
    auto plant = build_sine_gordon(p, grid);
    LyapunovReport r;
    r.plant = "sine-gordon";
    r.m = grid->m();
    r.samples = samples;
    r.seed = seed;
    r.tol = tol;
    r.coercivity_bound = 1.0 / (2.0 * p.alpha);
    r.min_coercivity = INFINITY;
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        const ProductState z = draw_state(rng, grid);
        const ProductState az = plant->apply_A(z);
        const ProductState piz = apply_Pi(z, p.alpha);
        const double n2 = plant->inner(z, z);
        const double val = plant->inner(az, piz) + plant->inner(piz, az) + n2;
        r.max_excess = std::max(r.max_excess, std::abs(val) / n2);
        r.min_coercivity = std::min(r.min_coercivity, plant->inner(piz, z) / n2);
    }
    r.max_defect = r.max_excess;
    r.pass = r.max_excess <= tol && r.min_coercivity >= r.coercivity_bound * (1.0 - 1e-12);
    return r;
}

RefinementReport lyapunov_refinement(PlantKind kind, const std::vector<int>& grids, int samples, std::uint64_t seed) {
    RefinementReport r;
    std::vector<double> defects;
    bool all = true;
    for (int m : grids) {
        auto g = Grid::uniform(m);
        LyapunovReport level = kind == PlantKind::reactor ? lyapunov_check_reactor(g, ReactorParams{}, samples, seed)
                                                          : lyapunov_check_sine_gordon(g, SineGordonParams{}, samples, seed);
        all = all && level.pass;
        defects.push_back(level.max_defect);
        r.levels.push_back(level);
    }
    r.defects_decrease = nonincreasing(defects, r.floor);
    r.pass = all && r.defects_decrease;
    return r;
}

SpectrumReport spectrum_check_Q(const Decomposition& ctx, double spectral_margin) {
    const SemilinearPlant& plant = ctx.plant();
    const int m = plant.m();
    const int dim = plant.dim();
    const std::vector<int> idx = free_indices(m);
    const int n = static_cast<int>(idx.size());

    SpectrumReport r;
    r.plant = plant.kind == PlantKind::reactor ? "reactor" : "sine-gordon";
    r.m = m;
    r.dim = n - 1;
    r.spectral_margin = spectral_margin;
    r.p0 = ctx.p0();

    // Orthonormal (Euclidean) basis of {v : g^T v = 0}, g = G b, from a Householder reflector.
    const Eigen::MatrixXd G = gram_matrix(plant, idx);
    const Vec g = G * restrict_to(plant.b.data(), idx);
    Vec v = g;
    v[0] += (g[0] >= 0.0 ? 1.0 : -1.0) * g.norm();
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n) - (2.0 / v.squaredNorm()) * v * v.transpose();
    const Eigen::MatrixXd B = H.rightCols(n - 1);

    Eigen::MatrixXd QB(n, n - 1);
    Eigen::RowVectorXd S(n - 1);
    for (int j = 0; j < n - 1; ++j) {
        const EtaState eta{ProductState(plant.grid, embed(B.col(j), idx, dim))};
        QB.col(j) = restrict_to(ctx.apply_Q(eta).value.data(), idx);
        S[j] = ctx.apply_S(eta);
    }
    const Eigen::MatrixXd Qm = B.transpose() * QB;
    Eigen::EigenSolver<Eigen::MatrixXd> es(Qm, false);
    if (es.info() != Eigen::Success) {
        r.status = "inconclusive";
        return r;
    }
    r.max_real = max_real(es.eigenvalues());

    Eigen::MatrixXd A(n, n);
    for (int j = 0; j < n; ++j) {
        Vec e = Vec::Zero(n);
        e[j] = 1.0;
        A.col(j) = restrict_to(plant.apply_A(ProductState(plant.grid, embed(e, idx, dim))).data(), idx);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> esa(A, false);
    if (esa.info() != Eigen::Success) {
        r.status = "inconclusive";
        return r;
    }
    r.max_real_A = max_real(esa.eigenvalues());

    // (y, eta) block operator [[p0, S], [R, Q]].
    Eigen::MatrixXd blk(n, n);
    blk(0, 0) = ctx.p0();
    blk.block(0, 1, 1, n - 1) = S;
    blk.block(1, 0, n - 1, 1) = B.transpose() * restrict_to(ctx.apply_R(1.0).value.data(), idx);
    blk.block(1, 1, n - 1, n - 1) = Qm;
    Eigen::EigenSolver<Eigen::MatrixXd> esb(blk, false);
    if (esb.info() != Eigen::Success) {
        r.status = "inconclusive";
        return r;
    }
    r.block_distance_to_p0 = INFINITY;
    for (const auto& z : esb.eigenvalues()) {
        const double d = std::abs(z - std::complex<double>(ctx.p0(), 0.0));
        if (d < r.block_distance_to_p0) {
            r.block_distance_to_p0 = d;
            r.block_eig_near_p0 = z.real();
        }
    }
    r.pass = r.max_real <= -spectral_margin;
    r.status = r.pass ? "pass" : "fail";
    return r;
}

InputBank make_input_bank(const Decomposition& ctx, int count, double k, double k_hat, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    InputBank bank;
    for (int i = 0; i < count; ++i) {
        if (i % 5 == 4) {
            const double c = k * (2.0 * u01(rng) - 1.0);
            bank.y.push_back([c](double) { return c; });
            bank.labels.push_back("constant");
        } else {
            const double period = 1.0 + 4.0 * u01(rng);
            std::array<double, 3> amp{}, phase{};
            double total = 0.0;
            for (int j = 0; j < 3; ++j) {
                amp[j] = 2.0 * u01(rng) - 1.0;
                phase[j] = 2.0 * pi * u01(rng);
                total += std::abs(amp[j]);
            }
            const double scale = k * (0.5 + 0.5 * u01(rng)) / total;
            for (double& a : amp) a *= scale;
            const double w = 2.0 * pi / period;
            bank.y.push_back([amp, phase, w](double t) {
                double s = 0.0;
                for (int j = 0; j < 3; ++j) s += amp[j] * std::sin((j + 1) * w * t + phase[j]);
                return s;
            });
            bank.labels.push_back("periodic");
        }
        ProductState raw = draw_state(rng, ctx.plant().grid);
        ProductState eta = ctx.project_Pperp(raw).value;
        const double nrm = ctx.plant().norm(eta);
        if (nrm > 0.0) eta *= k_hat * u01(rng) / nrm;
        bank.eta0.push_back(EtaState{eta});
    }
    return bank;
}

BisboReport bisbo_probe(const Decomposition& ctx, const InputBank& bank, double horizon, const EtaOptions& opts) {
    BisboReport r;
    r.plant = ctx.plant().kind == PlantKind::reactor ? "reactor" : "sine-gordon";
    r.horizon = horizon;
    bool finite = true;
    for (std::size_t i = 0; i < bank.y.size(); ++i) {
        const EtaTrajectory tr = simulate_eta(bank.y[i], bank.eta0[i], ctx, 2.0 * horizon, opts);
        BisboEntry e;
        e.label = bank.labels.empty() ? "" : bank.labels[i];
        for (std::size_t j = 0; j < tr.t.size(); ++j) {
            if (tr.t[j] <= horizon) e.sup_first = std::max(e.sup_first, tr.eta_norm[j]);
            e.sup_full = std::max(e.sup_full, tr.eta_norm[j]);
        }
        e.growth = e.sup_first > 0.0 ? (e.sup_full - e.sup_first) / e.sup_first : (e.sup_full > 0.0 ? INFINITY : 0.0);
        e.drift = tr.max_orthogonality_drift;
        finite = finite && std::isfinite(e.sup_full);
        r.max_sup = std::max(r.max_sup, e.sup_full);
        r.max_growth = std::max(r.max_growth, e.growth);
        r.max_drift = std::max(r.max_drift, e.drift);
        r.entries.push_back(e);
    }
    r.pass = finite && r.max_growth < r.growth_limit;
    return r;
}

TSuiteReport t_operator_property_suite(const Decomposition& ctx, const TSuiteOptions& o) {
    TSuiteReport r;
    r.plant = ctx.plant().kind == PlantKind::reactor ? "reactor" : "sine-gordon";
    const int bank_size = std::max(o.causality_pairs + 1, o.bibo_signals);
    const InputBank bank = make_input_bank(ctx, bank_size, o.amplitude, 1.0, o.seed);
    const auto n_samples = [&o](double horizon) { return static_cast<std::size_t>(std::lround(horizon / o.sample_dt)) + 1; };

    // Causality: inputs equal on [0, prefix), different afterwards.
    const std::size_t n = n_samples(o.horizon);
    const std::size_t cut = static_cast<std::size_t>(std::lround(o.prefix / o.sample_dt));
    for (int i = 0; i < o.causality_pairs; ++i) {
        const SampledSignal ya = SampledSignal::sample(bank.y[i], 0.0, o.sample_dt, n);
        SampledSignal yb = SampledSignal::sample(bank.y[i + 1], 0.0, o.sample_dt, n);
        std::copy(ya.values.begin(), ya.values.begin() + static_cast<long>(cut), yb.values.begin());
        const OperatorTResult ta = operator_T(ya, bank.eta0[i], ctx, o.eta);
        const OperatorTResult tb = operator_T(yb, bank.eta0[i], ctx, o.eta);
        for (std::size_t j = 0; j < cut; ++j)
            r.causality_max_diff = std::max(r.causality_max_diff, std::abs(ta.T.values[j] - tb.T.values[j]));
    }
    r.causality_pass = r.causality_max_diff <= 1e-10;

    // BIBO: sup |T| on [0, horizon] against [0, 2 horizon].
    const std::size_t n2 = n_samples(2.0 * o.horizon);
    bool finite = true;
    for (int i = 0; i < o.bibo_signals; ++i) {
        const SampledSignal y = SampledSignal::sample(bank.y[i], 0.0, o.sample_dt, n2);
        const OperatorTResult t = operator_T(y, bank.eta0[i], ctx, o.eta);
        double first = 0.0, full = 0.0;
        for (std::size_t j = 0; j < n2; ++j) {
            const double v = std::abs(t.T.values[j]);
            if (j < n) first = std::max(first, v);
            full = std::max(full, v);
        }
        finite = finite && std::isfinite(full);
        r.bibo_sup_first = std::max(r.bibo_sup_first, first);
        r.bibo_sup_full = std::max(r.bibo_sup_full, full);
        const double growth = first > 0.0 ? (full - first) / first : (full > 0.0 ? INFINITY : 0.0);
        r.bibo_max_growth = std::max(r.bibo_max_growth, growth);
    }
    r.bibo_pass = finite && r.bibo_max_growth < 0.05;

    // Local Lipschitz probe: perturbation supported on [t, t + tau].
    const std::size_t nl = n_samples(o.lipschitz_t + o.lipschitz_tau);
    const SampledSignal base = SampledSignal::sample(bank.y[0], 0.0, o.sample_dt, nl);
    const OperatorTResult tbase = operator_T(base, bank.eta0[0], ctx, o.eta);
    const double t0 = o.lipschitz_t, tau = o.lipschitz_tau;
    auto bump = [t0, tau](double t) {
        if (t < t0 || t > t0 + tau) return 0.0;
        const double s = std::sin(pi * (t - t0) / tau);
        return s * s;
    };
    for (double delta : o.lipschitz_deltas) {
        SampledSignal pert = base;
        double in_sup = 0.0;
        for (std::size_t j = 0; j < nl; ++j) {
            const double d = delta * bump(pert.time(j));
            pert.values[j] += d;
            in_sup = std::max(in_sup, std::abs(d));
        }
        const OperatorTResult tp = operator_T(pert, bank.eta0[0], ctx, o.eta);
        double out_sup = 0.0;
        for (std::size_t j = 0; j < nl; ++j)
            if (pert.time(j) >= t0 - 1e-12) out_sup = std::max(out_sup, std::abs(tp.T.values[j] - tbase.T.values[j]));
        r.lipschitz_ratios.push_back(out_sup / in_sup);
    }
    r.lipschitz_max_factor = 1.0;
    bool lip_finite = true;
    for (std::size_t i = 0; i < r.lipschitz_ratios.size(); ++i) {
        lip_finite = lip_finite && std::isfinite(r.lipschitz_ratios[i]) && r.lipschitz_ratios[i] > 0.0;
        if (i > 0) {
            const double a = r.lipschitz_ratios[i - 1], b = r.lipschitz_ratios[i];
            r.lipschitz_max_factor = std::max(r.lipschitz_max_factor, std::max(a / b, b / a));
        }
    }
    r.lipschitz_pass = lip_finite && r.lipschitz_max_factor <= 2.0;
    r.pass = r.causality_pass && r.bibo_pass && r.lipschitz_pass;
    return r;
}

double parseval_tail(int N) {
    // The odd-harmonic coefficients of the indicator have squares 8/(n^2 pi^2) and sum to 1.
    double s = 0.0;
    for (int n = 1; n <= N; n += 2) s += 8.0 / (static_cast<double>(n) * n * pi * pi);
    return std::sqrt(std::max(0.0, 1.0 - s));
}

double indicator_distance_fine(int N, int fine_nodes) {
    auto g = Grid::uniform(fine_nodes);
    Vec d = Vec::Ones(fine_nodes) - indicator_approx(N, g).values();
    return std::sqrt(inner_l2(*g, d, d));
}

SweepReport approximation_sweep(const ScenarioSpec& scenario, const std::vector<int>& Ns, int N_ref) {
    if (scenario.plant != PlantKind::reactor) throw PreconditionError("approximation sweep is defined for the reactor");
    SweepReport rep;
    rep.N_ref = N_ref;
    ScenarioSpec ref_spec = scenario;
    ref_spec.reactor.N = N_ref;
    const PlantPtr ref = build_plant(ref_spec);

    for (int N : Ns) {
        ScenarioSpec spec = scenario;
        spec.reactor.N = N;
        spec.snapshot_interval = 0.0;
        const ScenarioConfig cfg = instantiate(spec);
        const PlantPtr pl = cfg.plant;
        const int d = pl->dim();
        const Grid& g = *pl->grid;

        LoopModel model;
        model.dim = 2 * d;
        model.output = [pl, &g, d](const Vec& x) { return inner_raw(pl->inner_kind, g, x.head(d), pl->c.data()); };
        model.state_norm = [pl, &g, d](const Vec& x) {
            const Vec h = x.head(d);
            return std::sqrt(inner_raw(pl->inner_kind, g, h, h));
        };
        auto scratch = std::make_shared<Vec>(d);
        auto dxa = std::make_shared<Vec>(d);
        model.dynamics = [pl, ref, d, scratch, dxa](const Vec& x, double v, Vec& dx) {
            const Vec xa = x.head(d), xr = x.tail(d);
            pl->A(xa, *dxa);
            pl->f(xa, *scratch);
            dx.head(d) = *dxa + *scratch + v * pl->b.data();
            ref->A(xr, *dxa);
            ref->f(xr, *scratch);
            dx.tail(d) = *dxa + *scratch + v * ref->b.data();
        };
        model.pin = [d](Vec& v) {
            v[0] = v[d / 2] = 0.0;
            v[d] = v[d + d / 2] = 0.0;
        };

        Vec x0(2 * d);
        x0 << cfg.x0.data(), cfg.x0.data();
        SweepLevel level;
        level.N = N;
        auto observer = [&](double, const Vec& x) {
            const Vec diff = x.tail(d) - x.head(d);
            level.sup_rho = std::max(level.sup_rho, std::sqrt(inner_raw(pl->inner_kind, g, diff, diff)));
            const double y_ref_plant = inner_raw(ref->inner_kind, g, x.tail(d), ref->c.data());
            const double y_l = inner_raw(pl->inner_kind, g, x.head(d), pl->c.data());
            level.sup_lambda = std::max(level.sup_lambda, std::abs(y_ref_plant - y_l));
        };
        const TrajectoryRecord rec = simulate_loop(model, x0, cfg, observer);
        level.eps_min = rec.eps_min;
        level.indicator_distance = indicator_distance_fine(N);
        level.parseval_tail = parseval_tail(N);
        level.b_distance = scenario.reactor.beta * level.indicator_distance;
        level.c_distance = level.indicator_distance;
        level.fitted_C = level.sup_lambda / (level.b_distance + level.c_distance);
        rep.levels.push_back(level);
    }

    rep.indicator_decreasing = true;
    rep.parseval_match = true;
    std::vector<double> lam, rho;
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
        const SweepLevel& l = rep.levels[i];
        if (i > 0 && !(l.indicator_distance < rep.levels[i - 1].indicator_distance)) rep.indicator_decreasing = false;
        if (std::abs(l.indicator_distance - l.parseval_tail) > 1e-6) rep.parseval_match = false;
        lam.push_back(l.sup_lambda);
        rho.push_back(l.sup_rho);
    }
    rep.lambda_nonincreasing = nonincreasing(lam);
    rep.rho_nonincreasing = nonincreasing(rho);
    rep.pass = rep.indicator_decreasing && rep.parseval_match && rep.lambda_nonincreasing && rep.rho_nonincreasing;
    return rep;
}

ClosedFormReport closed_form_checks(int m) {
    ClosedFormReport r;
    auto grid = Grid::uniform(m);
    const SineGordonParams sp;
    Decomposition sg(build_sine_gordon(sp, grid));
    r.sg_p0 = sg.p0();
    r.sg_p0_closed = sg_p0_closed_form(sp);
    r.sg_p0_pass = std::abs(r.sg_p0 - r.sg_p0_closed) <= 5e-3;
    r.pi_astar_c_norm = sg.plant().norm(sg.PI_Astar_c());
    r.astar_c_norm = sg.plant().norm(sg.Astar_c());
    r.s_bound = 10.0 / (static_cast<double>(m) * m) * r.astar_c_norm;
    r.s_pass = r.pi_astar_c_norm <= r.s_bound;
    const ReactorParams rp;
    r.reactor_gamma = build_reactor(rp, grid)->gamma();
    r.reactor_gamma_series = reactor_gamma_series(rp);
    r.gamma_pass = std::abs(r.reactor_gamma - r.reactor_gamma_series) <= 1e-8;
    r.pass = r.sg_p0_pass && r.s_pass && r.gamma_pass;
    return r;
}

nlohmann::json to_json(const LyapunovReport& r) {
    nlohmann::json j = {{"plant", r.plant},         {"m", r.m},
                        {"samples", r.samples},     {"seed", r.seed},
                        {"tol", r.tol},             {"max_excess", r.max_excess},
                        {"max_defect", r.max_defect}, {"pass", r.pass}};
    if (r.plant == "reactor") j["second_block_defect"] = r.second_block_defect;
    if (r.plant == "sine-gordon") {
        j["min_coercivity"] = r.min_coercivity;
        j["coercivity_bound"] = r.coercivity_bound;
    }
    return j;
}

nlohmann::json to_json(const RefinementReport& r) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : r.levels) levels.push_back(to_json(l));
    return {{"levels", levels}, {"roundoff_floor", r.floor}, {"defects_decrease", r.defects_decrease}, {"pass", r.pass}};
}

nlohmann::json to_json(const SpectrumReport& r) {
    return {{"plant", r.plant},
            {"status", r.status},
            {"m", r.m},
            {"dim", r.dim},
            {"max_real", r.max_real},
            {"spectral_margin", r.spectral_margin},
            {"p0", r.p0},
            {"block_eig_near_p0", r.block_eig_near_p0},
            {"block_distance_to_p0", r.block_distance_to_p0},
            {"max_real_A", r.max_real_A},
            {"pass", r.pass}};
}

nlohmann::json to_json(const BisboReport& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"label", e.label},
                           {"sup_first", e.sup_first},
                           {"sup_full", e.sup_full},
                           {"growth", e.growth},
                           {"drift", e.drift}});
    return {{"plant", r.plant},         {"horizon", r.horizon},       {"growth_limit", r.growth_limit},
            {"max_sup", r.max_sup},     {"max_growth", r.max_growth}, {"max_drift", r.max_drift},
            {"entries", entries},       {"pass", r.pass}};
}

nlohmann::json to_json(const TSuiteReport& r) {
    return {{"plant", r.plant},
            {"causality_max_diff", r.causality_max_diff},
            {"causality_pass", r.causality_pass},
            {"bibo_sup_first", r.bibo_sup_first},
            {"bibo_sup_full", r.bibo_sup_full},
            {"bibo_max_growth", r.bibo_max_growth},
            {"bibo_pass", r.bibo_pass},
            {"lipschitz_ratios", r.lipschitz_ratios},
            {"lipschitz_max_factor", r.lipschitz_max_factor},
            {"lipschitz_pass", r.lipschitz_pass},
            {"pass", r.pass}};
}

nlohmann::json to_json(const SweepReport& r) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : r.levels)
        levels.push_back({{"N", l.N},
                          {"indicator_distance", l.indicator_distance},
                          {"parseval_tail", l.parseval_tail},
                          {"b_distance", l.b_distance},
                          {"c_distance", l.c_distance},
                          {"sup_rho", l.sup_rho},
                          {"sup_lambda", l.sup_lambda},
                          {"fitted_C", l.fitted_C},
                          {"eps_min", l.eps_min}});
    return {{"N_ref", r.N_ref},
            {"levels", levels},
            {"indicator_decreasing", r.indicator_decreasing},
            {"parseval_match", r.parseval_match},
            {"lambda_nonincreasing", r.lambda_nonincreasing},
            {"rho_nonincreasing", r.rho_nonincreasing},
            {"pass", r.pass}};
}

nlohmann::json to_json(const ClosedFormReport& r) {
    return {{"sg_p0", r.sg_p0},
            {"sg_p0_closed_form", r.sg_p0_closed},
            {"sg_p0_pass", r.sg_p0_pass},
            {"pi_astar_c_norm", r.pi_astar_c_norm},
            {"astar_c_norm", r.astar_c_norm},
            {"s_bound", r.s_bound},
            {"s_pass", r.s_pass},
            {"reactor_gamma", r.reactor_gamma},
            {"reactor_gamma_series", r.reactor_gamma_series},
            {"gamma_pass", r.gamma_pass},
            {"pass", r.pass}};
}

}  // namespace funnelctl
