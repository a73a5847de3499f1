#include "doctest.h"
#include "funnelctl/analysis.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace funnelctl;

TEST_CASE("reactor Lyapunov check holds with first-order boundary slack") {
    std::vector<double> defects, second;
    for (int m : {201, 401, 801}) {
        const LyapunovReport r = lyapunov_check_reactor(Grid::uniform(m), ReactorParams{}, 100, 3);
        CHECK(r.pass);
        CHECK(r.max_excess <= 1e-2);
        defects.push_back(r.max_defect);
        second.push_back(r.second_block_defect);
    }
    // Upwind differences: defects should roughly halve when h halves.
    CHECK(defects[1] <= 0.6 * defects[0]);
    CHECK(defects[2] <= 0.6 * defects[1]);
    CHECK(second[2] <= 0.6 * second[1]);
}

TEST_CASE("sine-Gordon Lyapunov identity and coercivity") {
    const SineGordonParams p;
    const LyapunovReport r = lyapunov_check_sine_gordon(Grid::uniform(201), p, 200, 11);
    CHECK(r.pass);
    CHECK(r.max_excess <= 1e-10);
    CHECK(r.coercivity_bound == doctest::Approx(0.15115).epsilon(1e-4));
    CHECK(r.min_coercivity >= r.coercivity_bound);
}

TEST_CASE("Lyapunov reports are deterministic in the seed") {
    auto g = Grid::uniform(101);
    const auto a = lyapunov_check_reactor(g, ReactorParams{}, 50, 5);
    const auto b = lyapunov_check_reactor(g, ReactorParams{}, 50, 5);
    const auto c = lyapunov_check_reactor(g, ReactorParams{}, 50, 6);
    CHECK(a.max_excess == b.max_excess);
    CHECK(a.max_defect == b.max_defect);
    CHECK(a.max_excess != c.max_excess);
    CHECK_THROWS_AS(lyapunov_check_reactor(g, ReactorParams{}, 0, 5), PreconditionError);
}

TEST_CASE("refinement report flags non-decreasing defects") {
    const RefinementReport r = lyapunov_refinement(PlantKind::reactor, {101, 201}, 50, 1);
    CHECK(r.defects_decrease);
    CHECK(r.pass);
    const RefinementReport wrong_order = lyapunov_refinement(PlantKind::reactor, {201, 101}, 50, 1);
    CHECK_FALSE(wrong_order.defects_decrease);
    CHECK_FALSE(wrong_order.pass);
}

TEST_CASE("spectrum of Q on the discrete complement") {
    auto g = Grid::uniform(101);
    ReactorParams one;
    one.N = 1;
    const SpectrumReport r = spectrum_check_Q(Decomposition(build_reactor(one, g)));
    CHECK(r.status == "pass");
    CHECK(r.max_real < 0.0);
    CHECK(r.dim == 2 * (g->m() - 1) - 1);

    const SineGordonParams sp;
    const SpectrumReport s = spectrum_check_Q(Decomposition(build_sine_gordon(sp, g)));
    CHECK(s.pass);
    CHECK(s.max_real_A < 0.0);
    CHECK(s.block_distance_to_p0 <= 1e-2);
    CHECK(s.block_eig_near_p0 == doctest::Approx(-sp.alpha / 2 + 0.5 * std::sqrt(sp.alpha * sp.alpha - oracle::pi * oracle::pi)).epsilon(1e-3));
    // Spectral margin above the rightmost eigenvalue must fail.
    const SpectrumReport strict = spectrum_check_Q(Decomposition(build_sine_gordon(sp, g)), 100.0);
    CHECK_FALSE(strict.pass);
    CHECK(strict.status == "fail");
}

TEST_CASE("indicator distance matches the Parseval tail") {
    for (int N : {1, 5, 25}) {
        const double tail = std::sqrt(1.0 - oracle::odd_square_sum(N));
        CHECK(parseval_tail(N) == doctest::Approx(tail).epsilon(1e-12));
        CHECK(std::abs(indicator_distance_fine(N) - tail) <= 1e-6);
    }
    CHECK(indicator_distance_fine(5) < indicator_distance_fine(1));
}

TEST_CASE("input bank respects the declared bounds") {
    auto g = Grid::uniform(101);
    Decomposition ctx(build_reactor(ReactorParams{}, g));
    const InputBank bank = make_input_bank(ctx, 10, 0.7, 0.3, 42);
    REQUIRE(bank.y.size() == 10);
    REQUIRE(bank.eta0.size() == 10);
    for (std::size_t i = 0; i < bank.y.size(); ++i) {
        double sup = 0.0;
        for (int j = 0; j <= 20000; ++j) sup = std::max(sup, std::abs(bank.y[i](j * 1e-3)));
        CHECK(sup <= 0.7 + 1e-12);
        CHECK(ctx.plant().norm(bank.eta0[i].value) <= 0.3 + 1e-12);
        const ProductState back = ctx.project_Pperp(bank.eta0[i].value).value;
        CHECK(ctx.plant().norm(back - bank.eta0[i].value) <= 1e-12);
    }
    CHECK(bank.labels[4] == "constant");
}

TEST_CASE("BISBO probe: zero input, zero state, no nonlinearity stays at zero") {
    auto g = Grid::uniform(51);
    auto linear = std::make_shared<SemilinearPlant>(build_reactor(ReactorParams{}, g)->without_nonlinearity());
    Decomposition ctx(linear);
    InputBank bank;
    bank.y.push_back([](double) { return 0.0; });
    bank.eta0.push_back(EtaState{ProductState::zeros(g)});
    bank.labels.push_back("zero");
    const BisboReport r = bisbo_probe(ctx, bank, 2.0);
    CHECK(r.max_sup == 0.0);
    CHECK(r.pass);
}

TEST_CASE("T-operator suite on a short horizon") {
    auto g = Grid::uniform(51);
    Decomposition ctx(build_sine_gordon(SineGordonParams{}, g));
    TSuiteOptions o;
    o.horizon = 2.0;
    o.prefix = 1.0;
    o.causality_pairs = 2;
    o.bibo_signals = 2;
    o.lipschitz_t = 0.5;
    const TSuiteReport r = t_operator_property_suite(ctx, o);
    CHECK(r.causality_pass);
    CHECK(r.causality_max_diff <= 1e-10);
    CHECK(r.lipschitz_ratios.size() == 4);
    CHECK(r.lipschitz_pass);
    CHECK(std::isfinite(r.bibo_sup_full));
}

TEST_CASE("sweep with N equal to the reference gives identical plants") {
    ScenarioSpec spec = builtin_scenario("reactor-paper");
    spec.grid = 51;
    spec.horizon = 0.5;
    const SweepReport r = approximation_sweep(spec, {33}, 33);
    REQUIRE(r.levels.size() == 1);
    CHECK(r.levels[0].sup_rho == 0.0);
    CHECK(r.levels[0].sup_lambda == 0.0);
    CHECK(r.levels[0].eps_min > 0.0);

    ScenarioSpec sg = builtin_scenario("sine-gordon-paper");
    CHECK_THROWS_AS(approximation_sweep(sg, {1}, 33), PreconditionError);
}

TEST_CASE("closed-form cross checks") {
    const ClosedFormReport r = closed_form_checks(401);
    CHECK(r.pass);
    CHECK(r.sg_p0_closed == doctest::Approx(-1.13573).epsilon(1e-5));
    CHECK(r.reactor_gamma == doctest::Approx(8.0 * oracle::odd_square_sum(100)).epsilon(1e-12));
}

TEST_CASE("reports serialize with pass flags") {
    const auto j = to_json(lyapunov_check_sine_gordon(Grid::uniform(51), SineGordonParams{}, 5, 9));
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("seed").get<std::uint64_t>() == 9);
    CHECK(j.at("m").get<int>() == 51);
    CHECK(j.contains("min_coercivity"));
    CHECK(to_json(closed_form_checks(101)).contains("reactor_gamma_series"));
}
