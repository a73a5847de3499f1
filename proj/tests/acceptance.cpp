// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "funnelctl/analysis.hpp"
#include "funnelctl/cli.hpp"
#include "funnelctl/errors.hpp"
#include "funnelctl/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

using namespace funnelctl;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... v) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, v...);
    return buf;
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " [" << title << "] " << o.detail
              << fmt(" (%.1fs)", secs) << std::endl;
}

Outcome scenario_properties(const std::string& name, double& runtime, TrajectoryRecord& rec) {
    const ScenarioConfig cfg = instantiate(builtin_scenario(name));
    const auto t0 = std::chrono::steady_clock::now();
    rec = simulate(cfg);
    runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double late = 0.0;
    bool inside = true;
    for (const auto& s : rec.samples) {
        if (s.t >= 5.0) late = std::max(late, std::abs(s.e));
        inside = inside && std::abs(s.e) < s.boundary;
    }
    const bool ok = inside && rec.eps_min > 0.0 && rec.max_phi_e < 1.0 && late < 2.55e-3 && std::isfinite(rec.sup_k) &&
                    std::isfinite(rec.sup_u) && runtime <= 60.0;
    return {ok, fmt("eps_min=%.3e max_phi_e=%.4f late_max|e|=%.4e sup_k=%.2f sup_u=%.4f runtime=%.2fs", rec.eps_min,
                    rec.max_phi_e, late, rec.sup_k, rec.sup_u, runtime)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main() {
    report(1, "reactor scenario containment", [] {
        double rt = 0.0;
        TrajectoryRecord rec;
        return scenario_properties("reactor-paper", rt, rec);
    });

    report(2, "sine-Gordon scenario containment and output formulas", [] {
        double rt = 0.0;
        TrajectoryRecord rec;
        Outcome o = scenario_properties("sine-gordon-paper", rt, rec);
        const ScenarioSpec spec = builtin_scenario("sine-gordon-paper");
        const ScenarioConfig cfg = instantiate(spec);
        const double y_inner = sg_output(cfg.x0, *cfg.plant);
        const double y_integral = sg_output_integral(cfg.x0, spec.sine_gordon);
        const double diff = std::abs(y_inner - y_integral);
        o.pass = o.pass && diff <= 1e-6;
        o.detail += fmt(" y0_inner=%.12f y0_integral=%.12f diff=%.2e", y_inner, y_integral, diff);
        return o;
    });

    report(3, "closed-form cross-checks at m=801", [] {
        const ClosedFormReport r = closed_form_checks(801);
        return Outcome{r.pass, fmt("p0=%.6f closed=%.6f |P_I A*c|=%.3e bound=%.3e gamma=%.12f series=%.12f", r.sg_p0,
                                   r.sg_p0_closed, r.pi_astar_c_norm, r.s_bound, r.reactor_gamma,
                                   r.reactor_gamma_series)};
    });

    report(4, "Lyapunov suites", [] {
        auto g = Grid::uniform(801);
        const LyapunovReport re = lyapunov_check_reactor(g, ReactorParams{}, 1000, 7);
        const LyapunovReport sg = lyapunov_check_sine_gordon(g, SineGordonParams{}, 1000, 7);
        const RefinementReport rr = lyapunov_refinement(PlantKind::reactor, {201, 401, 801}, 1000, 7);
        const RefinementReport rs = lyapunov_refinement(PlantKind::sine_gordon, {201, 401, 801}, 1000, 7);
        const bool coercive = sg.min_coercivity >= sg.coercivity_bound;
        std::string defects;
        for (const auto& l : rr.levels) defects += fmt("%.3e ", l.max_defect);
        return Outcome{re.pass && sg.pass && rr.pass && rs.pass && coercive,
                       fmt("reactor max=%.3e sine-gordon max=%.3e coercivity=%.4f>=%.4f reactor defects(m=201,401,801)=",
                           re.max_excess, sg.max_excess, sg.min_coercivity, sg.coercivity_bound) +
                           defects + fmt("sine-gordon defects at round-off<=%.0e: %s", rs.floor,
                                         rs.defects_decrease ? "yes" : "no")};
    });

    report(5, "spectrum of Q and the block operator", [] {
        auto g = Grid::uniform(201);
        const SpectrumReport r = spectrum_check_Q(Decomposition(build_reactor(ReactorParams{}, g)));
        const SpectrumReport s = spectrum_check_Q(Decomposition(build_sine_gordon(SineGordonParams{}, g)));
        const bool ok = r.status != "inconclusive" && s.status != "inconclusive" && r.max_real < 0.0 &&
                        s.max_real < 0.0 && s.block_distance_to_p0 <= 1e-2;
        return Outcome{ok, fmt("reactor max Re=%.4f sine-gordon max Re=%.4f block eig near p0=%.6f (distance %.2e)",
                               r.max_real, s.max_real, s.block_eig_near_p0, s.block_distance_to_p0)};
    });

    report(6, "operator T properties", [] {
        auto g = Grid::uniform(201);
        std::string d;
        bool ok = true;
        for (auto [label, ctx] : {std::pair{"reactor", Decomposition(build_reactor(ReactorParams{}, g))},
                                  std::pair{"sine-gordon", Decomposition(build_sine_gordon(SineGordonParams{}, g))}}) {
            const TSuiteReport t = t_operator_property_suite(ctx, TSuiteOptions{});
            const BisboReport b = bisbo_probe(ctx, make_input_bank(ctx, 20, 1.0, 1.0, 7), 10.0);
            ok = ok && t.pass && b.pass;
            d += fmt("%s: causality=%.1e bibo_growth=%.2e lipschitz_factor=%.4f eta_growth=%.2e; ", label,
                     t.causality_max_diff, t.bibo_max_growth, t.lipschitz_max_factor, b.max_growth);
        }
        return Outcome{ok, d};
    });

    report(7, "approximation sweep over N", [] {
        const SweepReport r = approximation_sweep(builtin_scenario("reactor-paper"), {1, 5, 25, 99}, 199);
        std::string d;
        for (const auto& l : r.levels)
            d += fmt("N=%d dist=%.6f tail=%.6f sup|lambda|=%.3e sup|rho|=%.3e; ", l.N, l.indicator_distance,
                     l.parseval_tail, l.sup_lambda, l.sup_rho);
        const bool ok = r.indicator_decreasing && r.parseval_match && r.lambda_nonincreasing;
        return Outcome{ok, d + (r.rho_nonincreasing ? "rho nonincreasing" : "rho NOT nonincreasing")};
    });

    report(8, "fixed-step Richardson ratio", [] {
        const ScenarioConfig cfg = instantiate(builtin_scenario("reactor-paper"));
        const double dt = 6.25e-5;
        const double y1 = simulate_fixed_step(cfg, dt, {5.0})[0];
        const double y2 = simulate_fixed_step(cfg, dt / 2, {5.0})[0];
        const double y4 = simulate_fixed_step(cfg, dt / 4, {5.0})[0];
        const double ratio = (y1 - y2) / (y2 - y4);
        return Outcome{ratio >= 8.0 && ratio <= 32.0,
                       fmt("dt=%.3e y(5): %.15f %.15f %.15f ratio=%.3f", dt, y1, y2, y4, ratio)};
    });

    report(9, "byte-identical CSV across runs", [] {
        const fs::path base = fs::temp_directory_path() / "funnelctl_acceptance";
        fs::remove_all(base);
        bool same = true;
        std::size_t files = 0;
        for (const char* scen : {"reactor-paper", "sine-gordon-paper"}) {
            const fs::path a = base / (std::string(scen) + "_a"), b = base / (std::string(scen) + "_b");
            if (run_cli({"run", "--scenario", scen, "--seed", "7", "--out", a.string()}) != exit_ok) return Outcome{false, "run failed"};
            if (run_cli({"run", "--scenario", scen, "--seed", "7", "--out", b.string()}) != exit_ok) return Outcome{false, "run failed"};
            for (const auto& entry : fs::directory_iterator(a)) {
                if (entry.path().extension() != ".csv") continue;
                ++files;
                same = same && slurp(entry.path()) == slurp(b / entry.path().filename());
            }
        }
        return Outcome{same && files > 0, fmt("%zu CSV files compared", files)};
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : fmt("%d CRITERIA FAILED", failures)) << std::endl;
    return failures == 0 ? 0 : 1;
}
