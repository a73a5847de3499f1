#include "funnelctl/cli.hpp"

#include "funnelctl/analysis.hpp"
#include "funnelctl/errors.hpp"
#include "funnelctl/scenario.hpp"

#include <CLI11.hpp>
#include <boost/crc.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

namespace funnelctl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    std::string scenario;
    std::string suite;
    std::string config;
    std::string out = "out";
    std::uint64_t seed = 7;
    std::optional<int> grid;
    std::optional<double> horizon;
    std::optional<double> csv_interval;
    int jobs = 1;
};

std::shared_ptr<spdlog::logger> logger() {
    static std::shared_ptr<spdlog::logger> log = [] {
        auto l = spdlog::stderr_color_mt("funnelctl");
        const char* env = std::getenv("FUNNELCTL_LOG");
        l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
        return l;
    }();
    return log;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string time_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", t);
    return buf;
}

std::uint32_t crc32_of(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    boost::crc_32_type crc;
    crc.process_bytes(bytes.data(), bytes.size());
    return crc.checksum();
}

class OutputDir {
public:
    explicit OutputDir(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void write(const std::string& name, const std::string& content) {
        std::ofstream f(dir_ / name, std::ios::binary);
        f << content;
        if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
        files_.push_back(name);
    }

    void write_manifest(const Options& o) {
        json files = json::array();
        for (const auto& f : files_) {
            char hex[16];
            std::snprintf(hex, sizeof hex, "%08x", crc32_of(dir_ / f));
            files.push_back({{"file", f}, {"crc32", hex}, {"bytes", fs::file_size(dir_ / f)}});
        }
        json m = {{"scenario", o.scenario.empty() ? o.suite : o.scenario},
                  {"config", o.config},
                  {"output_dir", dir_.string()},
                  {"seed", o.seed},
                  {"files", files}};
        std::ofstream(dir_ / "manifest.json", std::ios::binary) << m.dump(2) << "\n";
    }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

std::string trajectory_csv(const TrajectoryRecord& rec, double interval) {
    std::ostringstream os;
    os << "t,y,y_ref,e,funnel_upper,funnel_lower,u,k,state_norm\n";
    double next = -INFINITY;
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        const TrajectorySample& s = rec.samples[i];
        const bool last = i + 1 == rec.samples.size();
        if (s.t + 1e-12 < next && !last) continue;
        next = s.t + interval;
        os << num(s.t) << ',' << num(s.y) << ',' << num(s.y_ref) << ',' << num(s.e) << ','
           << num(s.y_ref + s.boundary) << ',' << num(s.y_ref - s.boundary) << ',' << num(s.u) << ',' << num(s.k)
           << ',' << num(s.state_norm) << '\n';
    }
    return os.str();
}

std::string snapshot_csv(const Snapshot& snap, PlantKind kind) {
    std::ostringstream os;
    os << (kind == PlantKind::reactor ? "z,theta1,theta2\n" : "z,x,x_t\n");
    const Grid& g = *snap.state.grid();
    for (int i = 0; i < g.m(); ++i)
        os << num(g.z(i)) << ',' << num(snap.state.first()[i]) << ',' << num(snap.state.second()[i]) << '\n';
    return os.str();
}

ScenarioSpec resolve_spec(const Options& o, const std::string& name) {
    if (scenario_requires_config(name) && o.config.empty())
        throw ConfigError("scenario '" + name + "' requires --config");
    ScenarioSpec spec = builtin_scenario(name);
    if (!o.config.empty()) spec = apply_config_file(o.config, spec);
    if (o.grid) spec.grid = *o.grid;
    if (o.horizon) spec.horizon = *o.horizon;
    if (o.csv_interval) spec.csv_interval = *o.csv_interval;
    if (spec.grid < 3) throw ConfigError("grid must have at least 3 nodes");
    if (!(spec.horizon > 0.0)) throw ConfigError("horizon must be positive");
    if (spec.csv_interval < 0.0) throw ConfigError("csv_interval must be non-negative");
    return spec;
}

int run_scenario(const Options& o) {
    const ScenarioSpec spec = resolve_spec(o, o.scenario);
    const ScenarioConfig cfg = instantiate(spec);
    logger()->info("running {} (m = {}, horizon = {})", spec.name, spec.grid, spec.horizon);

    TrajectoryRecord rec;
    try {
        rec = simulate(cfg);
    } catch (const FunnelViolation& e) {
        logger()->error("{}", e.what());
        std::cerr << "funnelctl: " << e.what() << "\n";
        return exit_run_failure;
    } catch (const SimulationError& e) {
        logger()->error("{}", e.what());
        std::cerr << "funnelctl: " << e.what() << "\n";
        return exit_run_failure;
    }

    OutputDir out(o.out);
    out.write("trajectory.csv", trajectory_csv(rec, spec.csv_interval));
    for (const Snapshot& s : rec.snapshots)
        out.write("state_t" + time_label(s.t) + ".csv", snapshot_csv(s, spec.plant));
    out.write("config.ini", to_config_text(spec));

    double late_max = 0.0;
    for (const auto& s : rec.samples)
        if (s.t >= spec.horizon / 2.0) late_max = std::max(late_max, std::abs(s.e));
    json report = {{"scenario", spec.name},
                   {"m", spec.grid},
                   {"horizon", spec.horizon},
                   {"accepted_steps", rec.accepted},
                   {"rejected_steps", rec.rejected},
                   {"funnel_rejections", rec.funnel_rejections},
                   {"eps_min", rec.eps_min},
                   {"max_phi_e", rec.max_phi_e},
                   {"sup_k", rec.sup_k},
                   {"sup_u", rec.sup_u},
                   {"late_max_abs_e", late_max},
                   {"min_dt", rec.min_dt},
                   {"max_dt", rec.max_dt},
                   {"pass", rec.eps_min > 0.0}};
    out.write("report.json", report.dump(2) + "\n");
    out.write_manifest(o);
    logger()->info("{}: eps_min = {}, sup k = {}", spec.name, rec.eps_min, rec.sup_k);
    return rec.eps_min > 0.0 ? exit_ok : exit_analysis_fail;
}

struct Check {
    std::string name;
    std::function<json()> run;
};

std::vector<Check> suite_checks(const std::string& suite, const Options& o) {
    const std::uint64_t seed = o.seed;
    const int m_fine = o.grid.value_or(801);
    const int m = o.grid.value_or(201);
    const double horizon = o.horizon.value_or(10.0);
    auto sg_ctx = [m] { return std::make_shared<Decomposition>(build_sine_gordon(SineGordonParams{}, Grid::uniform(m))); };
    auto re_ctx = [m] { return std::make_shared<Decomposition>(build_reactor(ReactorParams{}, Grid::uniform(m))); };

    std::vector<Check> all;
    all.push_back({"closed-forms", [m_fine] { return to_json(closed_form_checks(m_fine)); }});
    all.push_back({"lyapunov", [=] {
                       auto g = Grid::uniform(m_fine);
                       const std::vector<int> levels{201, 401, 801};
                       json j = {{"reactor", to_json(lyapunov_check_reactor(g, ReactorParams{}, 1000, seed))},
                                 {"sine-gordon", to_json(lyapunov_check_sine_gordon(g, SineGordonParams{}, 1000, seed))},
                                 {"reactor_refinement", to_json(lyapunov_refinement(PlantKind::reactor, levels, 1000, seed))},
                                 {"sine-gordon_refinement",
                                  to_json(lyapunov_refinement(PlantKind::sine_gordon, levels, 1000, seed))}};
                       j["pass"] = j["reactor"]["pass"].get<bool>() && j["sine-gordon"]["pass"].get<bool>() &&
                                   j["reactor_refinement"]["pass"].get<bool>() &&
                                   j["sine-gordon_refinement"]["pass"].get<bool>();
                       return j;
                   }});
    all.push_back({"spectrum", [=] {
                       const SpectrumReport r = spectrum_check_Q(*re_ctx());
                       const SpectrumReport s = spectrum_check_Q(*sg_ctx());
                       const bool near = s.block_distance_to_p0 <= 1e-2;
                       return json{{"reactor", to_json(r)},
                                   {"sine-gordon", to_json(s)},
                                   {"p0_in_block_spectrum", near},
                                   {"pass", r.pass && s.pass && near}};
                   }});
    all.push_back({"bisbo", [=] {
                       json j;
                       bool pass = true;
                       for (auto& [label, ctx] : {std::pair{"reactor", re_ctx()}, std::pair{"sine-gordon", sg_ctx()}}) {
                           const InputBank bank = make_input_bank(*ctx, 20, 1.0, 1.0, seed);
                           const BisboReport r = bisbo_probe(*ctx, bank, horizon);
                           j[label] = to_json(r);
                           pass = pass && r.pass;
                       }
                       j["pass"] = pass;
                       return j;
                   }});
    all.push_back({"t-operator", [=] {
                       TSuiteOptions opts;
                       opts.seed = seed;
                       opts.horizon = horizon;
                       opts.prefix = horizon / 2.0;
                       json j;
                       bool pass = true;
                       for (auto& [label, ctx] : {std::pair{"reactor", re_ctx()}, std::pair{"sine-gordon", sg_ctx()}}) {
                           const TSuiteReport r = t_operator_property_suite(*ctx, opts);
                           j[label] = to_json(r);
                           pass = pass && r.pass;
                       }
                       j["pass"] = pass;
                       return j;
                   }});
    all.push_back({"sweep", [=] {
                       ScenarioSpec spec = resolve_spec(o, "reactor-paper");
                       return to_json(approximation_sweep(spec, {1, 5, 25, 99}, 199));
                   }});

    if (suite == "analysis-all") return all;
    for (auto& c : all)
        if (c.name == suite) return {c};
    throw ConfigError("unknown suite '" + suite + "'");
}

int run_suite(const Options& o) {
    std::vector<Check> checks = suite_checks(o.suite, o);
    std::vector<json> results(checks.size());
    std::vector<std::string> failures(checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < checks.size(); i = next++) {
            logger()->info("check {} started", checks[i].name);
            try {
                results[i] = checks[i].run();
            } catch (const std::exception& e) {
                failures[i] = e.what();
                logger()->error("check {} failed: {}", checks[i].name, e.what());
            }
        }
    };
    const int jobs = std::clamp(o.jobs, 1, static_cast<int>(checks.size()));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    json report = {{"suite", o.suite}, {"seed", o.seed}};
    bool pass = true;
    bool crashed = false;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        if (!failures[i].empty()) {
            report["checks"][checks[i].name] = {{"error", failures[i]}, {"pass", false}};
            crashed = true;
            pass = false;
            continue;
        }
        report["checks"][checks[i].name] = results[i];
        pass = pass && results[i].value("pass", false);
    }
    report["pass"] = pass;
    OutputDir out(o.out);
    out.write("report.json", report.dump(2) + "\n");
    out.write_manifest(o);
    if (crashed) return exit_run_failure;
    return pass ? exit_ok : exit_analysis_fail;
}

}  // namespace

std::vector<std::string> list_suites() {
    return {"analysis-all", "closed-forms", "lyapunov", "spectrum", "bisbo", "t-operator", "sweep"};
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Funnel control simulator for semilinear distributed parameter plants", "funnelctl"};
    app.require_subcommand(1);
    Options o;

    auto* list = app.add_subcommand("list", "List built-in scenarios and analysis suites");
    auto* run = app.add_subcommand("run", "Run a scenario or an analysis suite");
    auto* scen = run->add_option("--scenario", o.scenario, "Scenario name");
    auto* suite = run->add_option("--suite", o.suite, "Analysis suite name");
    scen->excludes(suite);
    run->add_option("--config", o.config, "INI config file applied on top of the scenario defaults");
    run->add_option("--out", o.out, "Output directory");
    run->add_option("--seed", o.seed, "Random seed for sampled checks");
    run->add_option("--grid", o.grid, "Number of grid nodes m");
    run->add_option("--horizon", o.horizon, "Simulation horizon");
    run->add_option("--jobs", o.jobs, "Parallel checks for --suite")->check(CLI::PositiveNumber);
    run->add_option("--csv-interval", o.csv_interval, "Minimum time between trajectory rows (0 = every step)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config_error;
    }

    if (list->parsed()) {
        for (const auto& s : list_scenarios())
            std::cout << s << (scenario_requires_config(s) ? "  (requires --config)" : "") << "\n";
        for (const auto& s : list_suites()) std::cout << "suite:" << s << "\n";
        return exit_ok;
    }
    if (o.scenario.empty() == o.suite.empty()) {
        std::cerr << "funnelctl: run needs exactly one of --scenario or --suite\n";
        return exit_config_error;
    }
    try {
        return o.scenario.empty() ? run_suite(o) : run_scenario(o);
    } catch (const ConfigError& e) {
        std::cerr << "funnelctl: config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const PreconditionError& e) {
        std::cerr << "funnelctl: config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const FunnelViolation& e) {
        std::cerr << "funnelctl: " << e.what() << "\n";
        return exit_run_failure;
    } catch (const SimulationError& e) {
        std::cerr << "funnelctl: " << e.what() << "\n";
        return exit_run_failure;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args);
}

}  // namespace funnelctl
