#include "doctest.h"
#include "funnelctl/errors.hpp"
#include "funnelctl/scenario.hpp"
#include "funnelctl/simulation.hpp"
#include "oracles.hpp"

#include <random>

using namespace funnelctl;
using oracle::pi;

namespace {

PlantPtr linear(PlantPtr p) { return std::make_shared<SemilinearPlant>(p->without_nonlinearity()); }

ScenarioConfig short_scenario(const std::string& name, double horizon) {
    ScenarioSpec spec = builtin_scenario(name);
    spec.horizon = horizon;
    spec.snapshot_interval = 0.5;
    return instantiate(spec);
}

}  // namespace

TEST_CASE("unforced linear reactor decays monotonically") {
    auto plant = linear(build_reactor(ReactorParams{}, Grid::uniform(101)));
    std::mt19937_64 rng(31);
    ProductState x0 = ProductState::sample(plant->grid, oracle::SmoothProfile::draw(rng), oracle::SmoothProfile::draw(rng));
    Vec x = x0.data();
    double dt = 1e-3;
    RK43Work w;
    StepControl c{1e-8, 1e-3, 1e-12, 1e-2, false};
    double prev = plant->norm(x0);
    bool monotone = true;
    integrate_adaptive(
        [&](double, const Vec& s, Vec& ds) { plant->A(s, ds); }, 0.0, 2.0, x, dt, c, w, [&](double, Vec& s) {
            const double n = plant->norm(ProductState(plant->grid, s));
            monotone = monotone && n < prev;
            prev = n;
        });
    CHECK(monotone);
    CHECK(prev < 1e-3 * plant->norm(x0));
}

TEST_CASE("unforced linear sine-Gordon decays in the Z norm") {
    auto plant = linear(build_sine_gordon(SineGordonParams{}, Grid::uniform(101)));
    std::mt19937_64 rng(32);
    ProductState x0 = ProductState::sample(plant->grid, oracle::SmoothProfile::draw(rng), oracle::SmoothProfile::draw(rng));
    Vec x = x0.data();
    double dt = 1e-3;
    RK43Work w;
    StepControl c{1e-8, 1e-3, 1e-12, 1e-2, false};
    std::vector<double> env(7, 0.0);
    integrate_adaptive([&](double, const Vec& s, Vec& ds) { plant->A(s, ds); }, 0.0, 6.0, x, dt, c, w,
                       [&](double t, Vec& s) {
                           auto& e = env[static_cast<std::size_t>(std::min(t, 5.999))];
                           e = std::max(e, plant->norm(ProductState(plant->grid, s)));
                       });
    for (int i = 1; i < 6; ++i) CHECK(env[i] < env[i - 1]);
    CHECK(env[5] < 0.05 * plant->norm(x0));
}

TEST_CASE("zero-error start stays at rest") {
    ScenarioConfig cfg;
    cfg.plant = linear(build_reactor(ReactorParams{}, Grid::uniform(51)));
    cfg.x0 = ProductState::zeros(cfg.plant->grid);
    cfg.y_ref = [](double) { return 0.0; };
    cfg.funnel = FunnelSpec::exp_offset(1.0, 2.0, 2.5e-3);
    cfg.horizon = 1.0;
    auto rec = simulate(cfg);
    for (const auto& s : rec.samples) {
        CHECK(s.u == 0.0);
        CHECK(s.e == 0.0);
    }
}

TEST_CASE("configuration preconditions") {
    ScenarioConfig cfg = short_scenario("reactor-paper", 0.1);
    cfg.y_ref = [](double) { return 5.0; };
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    ScenarioConfig cfg2 = short_scenario("reactor-paper", 0.1);
    cfg2.step.dt_init = 1.0;
    CHECK_THROWS_AS(cfg2.validate(), PreconditionError);
}

TEST_CASE("a step ending inside the margin guard is rejected and halves dt") {
    ScenarioConfig cfg = short_scenario("reactor-paper", 1.0);
    const double y0 = cfg.plant->output(cfg.x0);
    // Put the initial error at 99.95% of the boundary.
    const double offset = y0 + 0.9995 * cfg.funnel.boundary(0.0);
    cfg.y_ref = [offset](double) { return offset; };
    REQUIRE_NOTHROW(cfg.validate());
    StepResult r = step(cfg.x0.data(), 0.0, 1e-8, cfg);
    CHECK_FALSE(r.accepted);
    CHECK(r.dt_next == doctest::Approx(5e-9));
    CHECK(r.new_t == 0.0);
    INFO(r.reject_reason);
    CHECK(r.reject_reason.find("margin") != std::string::npos);
}

TEST_CASE("accepted step stays inside the funnel") {
    ScenarioConfig cfg = short_scenario("sine-gordon-paper", 1.0);
    StepResult r = step(cfg.x0.data(), 0.0, 1e-4, cfg);
    CHECK(r.accepted);
    CHECK(r.new_t == doctest::Approx(1e-4));
    CHECK(r.log.boundary > std::abs(r.log.e));
    CHECK(r.dt_next > 0.0);
}

TEST_CASE("step size underflow is a simulation error with diagnostics") {
    ScenarioConfig cfg = short_scenario("reactor-paper", 1.0);
    cfg.step.tol = 1e-30;
    cfg.step.dt_min = 1e-4;
    try {
        simulate(cfg);
        FAIL("expected failure");
    } catch (const SimulationError& e) {
        CHECK(e.dt < 1e-4);
        CHECK(e.detail.find("accepted") != std::string::npos);
    }
}

TEST_CASE("closed loop record invariants and determinism") {
    for (const char* name : {"reactor-paper", "sine-gordon-paper"}) {
        ScenarioConfig cfg = short_scenario(name, 2.0);
        auto a = simulate(cfg);
        auto b = simulate(cfg);
        REQUIRE(a.samples.size() == b.samples.size());
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
            CHECK(std::memcmp(&a.samples[i], &b.samples[i], sizeof(TrajectorySample)) == 0);
            if (i > 0) CHECK(a.samples[i].t > a.samples[i - 1].t);
            CHECK(cfg.funnel.phi(a.samples[i].t) * std::abs(a.samples[i].e) < 1.0);
        }
        CHECK(a.eps_min > 0.0);
        CHECK(a.samples.back().t == 2.0);
        CHECK(a.snapshots.size() == 5);
        CHECK(a.snapshots.back().t == 2.0);
        CHECK(std::isfinite(a.sup_k));
        CHECK(std::isfinite(a.sup_u));
    }
}

TEST_CASE("disturbance enters through b") {
    ScenarioSpec spec = builtin_scenario("reactor-paper");
    spec.horizon = 1.0;
    spec.disturbance.family = "constant";
    spec.disturbance.amplitude = 0.5;
    auto rec = simulate(instantiate(spec));
    CHECK(rec.eps_min > 0.0);
    spec.disturbance.amplitude = 0.0;
    auto base = simulate(instantiate(spec));
    CHECK(rec.samples.back().u != doctest::Approx(base.samples.back().u));
}

TEST_CASE("simulate_eta basics") {
    for (auto plant : {build_reactor(ReactorParams{}, Grid::uniform(101)), build_sine_gordon(SineGordonParams{}, Grid::uniform(101))}) {
        Decomposition lin(linear(plant));
        auto zero = EtaState{ProductState::zeros(plant->grid)};
        auto r = simulate_eta([](double) { return 0.0; }, zero, lin, 2.0);
        for (double n : r.eta_norm) CHECK(n == 0.0);

        Decomposition ctx(plant);
        std::mt19937_64 rng(33);
        std::uniform_real_distribution<double> ph(0.0, 2 * pi);
        double sup = 0.0;
        for (int draw = 0; draw < 20; ++draw) {
            const double p1 = ph(rng), p2 = ph(rng);
            auto y = [p1, p2](double t) { return 0.5 * std::sin(2.0 * t + p1) + 0.4 * std::cos(0.7 * t + p2); };
            EtaState eta0 = ctx.project_Pperp(ProductState::sample(
                plant->grid, [&](double z) { return 0.3 * std::sin(pi * z / 2); }, [&](double z) { return 0.2 * z; }));
            auto tr = simulate_eta(y, eta0, ctx, 3.0);
            for (double n : tr.eta_norm) sup = std::max(sup, n);
            CHECK(tr.max_orthogonality_drift <= 1e-6);
        }
        CHECK(std::isfinite(sup));
    }
}

TEST_CASE("operator T basics") {
    auto plant = build_reactor(ReactorParams{}, Grid::uniform(101));
    Decomposition lin(linear(plant));
    auto zero = EtaState{ProductState::zeros(plant->grid)};
    auto y0 = SampledSignal::sample([](double) { return 0.0; }, 0.0, 0.01, 201);
    auto T0 = operator_T(y0, zero, lin);
    for (double v : T0.T.values) CHECK(v == 0.0);

    EtaState eta0 = lin.project_Pperp(ProductState::sample(
        plant->grid, [](double z) { return std::sin(pi * z / 2); }, [](double z) { return z * (1 - z); }));
    auto T1 = operator_T(y0, eta0, lin);
    for (std::size_t i = 1; i < T1.eta_norm.size(); ++i) CHECK(T1.eta_norm[i] <= T1.eta_norm[i - 1] * (1 + 1e-12));
    CHECK(std::abs(T1.T.values.back()) < 1e-3 * std::abs(T1.T.values.front()) + 1e-12);

    // causality: inputs agreeing on [0, 1) give identical outputs there
    Decomposition ctx(plant);
    auto ya = SampledSignal::sample([](double t) { return 0.1 * std::sin(3 * t); }, 0.0, 0.01, 201);
    auto yb = ya;
    for (std::size_t i = 100; i < yb.values.size(); ++i) yb.values[i] += 0.3;
    auto Ta = operator_T(ya, eta0, ctx);
    auto Tb = operator_T(yb, eta0, ctx);
    for (std::size_t i = 0; i < 100; ++i) CHECK(Ta.T.values[i] == Tb.T.values[i]);
    CHECK(Ta.T.values[150] != Tb.T.values[150]);
    CHECK(Ta.max_orthogonality_drift < 1e-8);
}

TEST_CASE("output dynamics: y' = T(y) + gamma (u + d) along the closed loop") {
    // Compare the plant output derivative with the (y, eta) representation at a few states.
    auto plant = build_sine_gordon(SineGordonParams{}, Grid::uniform(201));
    Decomposition ctx(plant);
    std::mt19937_64 rng(34);
    for (int i = 0; i < 5; ++i) {
        ProductState x = ProductState::sample(plant->grid, oracle::SmoothProfile::draw(rng), oracle::SmoothProfile::draw(rng));
        const double v = 0.37;
        ProductState dx = plant->apply_A(x) + plant->apply_f(x) + v * plant->b;
        auto [y, eta] = ctx.transform(x);
        CHECK(plant->inner(dx, plant->c) ==
              doctest::Approx(ctx.output_drift(y, eta) + ctx.gamma() * v).epsilon(1e-9));
    }
}

TEST_CASE("fixed-step runs converge") {
    ScenarioConfig cfg = short_scenario("reactor-paper", 1.0);
    auto a = simulate_fixed_step(cfg, 1e-4, {0.5, 1.0});
    auto b = simulate_fixed_step(cfg, 5e-5, {0.5, 1.0});
    CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-10));
    auto adaptive = simulate(cfg);
    CHECK(adaptive.samples.back().y == doctest::Approx(b[1]).epsilon(1e-6));
}
