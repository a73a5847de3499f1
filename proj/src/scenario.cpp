#include "funnelctl/scenario.hpp"

#include "funnelctl/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace funnelctl {

namespace pt = boost::property_tree;
using std::numbers::pi;

Signal ReferenceSpec::build() const {
    const ReferenceSpec s = *this;
    if (family == "arctan") return [s](double t) { return s.offset + s.gain * std::atan(t); };
    if (family == "cos-exp") return [s](double t) { return s.amplitude * std::cos(std::exp(-s.rate * t)); };
    if (family == "constant") return [s](double) { return s.value; };
    if (family == "sine") return [s](double t) { return s.offset + s.amplitude * std::sin(s.omega * t); };
    throw ConfigError("unknown reference family '" + family + "'");
}

Signal DisturbanceSpec::build() const {
    const DisturbanceSpec s = *this;
    if (family == "none") return {};
    if (family == "constant") return [s](double) { return s.amplitude; };
    if (family == "sine") return [s](double t) { return s.amplitude * std::sin(s.omega * t); };
    throw ConfigError("unknown disturbance family '" + family + "'");
}

std::vector<std::string> list_scenarios() {
    return {"reactor-paper", "sine-gordon-paper", "reactor-custom", "sine-gordon-custom"};
}

bool scenario_requires_config(const std::string& name) { return name.ends_with("-custom"); }

namespace {

ScenarioSpec reactor_defaults() {
    ScenarioSpec s;
    s.plant = PlantKind::reactor;
    s.initial = {"cubic", 0.02, 0.7};
    s.reference.family = "arctan";
    s.reference.offset = 1.0 / 20.0;
    s.reference.gain = 1.0 / 20.0;
    return s;
}

ScenarioSpec sine_gordon_defaults() {
    ScenarioSpec s;
    s.plant = PlantKind::sine_gordon;
    s.initial = {"sine-poly", 1.0 / 6.0, 1.0 / 5.0};
    s.reference.family = "cos-exp";
    s.reference.amplitude = 1.0 / 5.0;
    s.reference.rate = 1.0 / 4.0;
    return s;
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v))
        throw ConfigError("key '" + key + "': expected a finite number, got '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_number(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("key '" + key + "': expected an integer");
    return static_cast<int>(v);
}

std::string strip_quotes(std::string v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
}

using Setter = std::function<void(ScenarioSpec&, const std::string&, const std::string&)>;

Setter num(double ScenarioSpec::*field) {
    return [field](ScenarioSpec& s, const std::string& k, const std::string& v) { s.*field = parse_number(k, v); };
}

template <class Sub>
Setter sub_num(Sub ScenarioSpec::*sub, double Sub::*field) {
    return [sub, field](ScenarioSpec& s, const std::string& k, const std::string& v) {
        (s.*sub).*field = parse_number(k, v);
    };
}

template <class Sub>
Setter sub_str(Sub ScenarioSpec::*sub, std::string Sub::*field) {
    return [sub, field](ScenarioSpec& s, const std::string&, const std::string& v) { (s.*sub).*field = v; };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"scenario.name", [](ScenarioSpec& s, const std::string&, const std::string& v) { s.name = v; }},
        {"scenario.plant",
         [](ScenarioSpec& s, const std::string& k, const std::string& v) {
             if (v == "reactor")
                 s.plant = PlantKind::reactor;
             else if (v == "sine-gordon")
                 s.plant = PlantKind::sine_gordon;
             else
                 throw ConfigError("key '" + k + "': unknown plant '" + v + "'");
         }},
        {"scenario.grid", [](ScenarioSpec& s, const std::string& k, const std::string& v) { s.grid = parse_int(k, v); }},
        {"scenario.horizon", num(&ScenarioSpec::horizon)},
        {"reactor.delta", sub_num(&ScenarioSpec::reactor, &ReactorParams::delta)},
        {"reactor.alpha", sub_num(&ScenarioSpec::reactor, &ReactorParams::alpha)},
        {"reactor.mu", sub_num(&ScenarioSpec::reactor, &ReactorParams::mu)},
        {"reactor.beta", sub_num(&ScenarioSpec::reactor, &ReactorParams::beta)},
        {"reactor.N",
         [](ScenarioSpec& s, const std::string& k, const std::string& v) { s.reactor.N = parse_int(k, v); }},
        {"sine-gordon.alpha", sub_num(&ScenarioSpec::sine_gordon, &SineGordonParams::alpha)},
        {"sine-gordon.nu", sub_num(&ScenarioSpec::sine_gordon, &SineGordonParams::nu)},
        {"sine-gordon.N",
         [](ScenarioSpec& s, const std::string& k, const std::string& v) { s.sine_gordon.N = parse_int(k, v); }},
        {"initial.family", sub_str(&ScenarioSpec::initial, &InitialSpec::family)},
        {"initial.amp1", sub_num(&ScenarioSpec::initial, &InitialSpec::amp1)},
        {"initial.amp2", sub_num(&ScenarioSpec::initial, &InitialSpec::amp2)},
        {"reference.family", sub_str(&ScenarioSpec::reference, &ReferenceSpec::family)},
        {"reference.offset", sub_num(&ScenarioSpec::reference, &ReferenceSpec::offset)},
        {"reference.gain", sub_num(&ScenarioSpec::reference, &ReferenceSpec::gain)},
        {"reference.amplitude", sub_num(&ScenarioSpec::reference, &ReferenceSpec::amplitude)},
        {"reference.rate", sub_num(&ScenarioSpec::reference, &ReferenceSpec::rate)},
        {"reference.omega", sub_num(&ScenarioSpec::reference, &ReferenceSpec::omega)},
        {"reference.value", sub_num(&ScenarioSpec::reference, &ReferenceSpec::value)},
        {"funnel.family",
         [](ScenarioSpec&, const std::string& k, const std::string& v) {
             if (v != "exp-offset") throw ConfigError("key '" + k + "': only 'exp-offset' is supported");
         }},
        {"funnel.a", sub_num(&ScenarioSpec::funnel, &FunnelParams::a)},
        {"funnel.lambda", sub_num(&ScenarioSpec::funnel, &FunnelParams::lambda)},
        {"funnel.offset", sub_num(&ScenarioSpec::funnel, &FunnelParams::offset)},
        {"disturbance.family", sub_str(&ScenarioSpec::disturbance, &DisturbanceSpec::family)},
        {"disturbance.amplitude", sub_num(&ScenarioSpec::disturbance, &DisturbanceSpec::amplitude)},
        {"disturbance.omega", sub_num(&ScenarioSpec::disturbance, &DisturbanceSpec::omega)},
        {"integrator.tol", sub_num(&ScenarioSpec::step, &StepControl::tol)},
        {"integrator.dt_init", sub_num(&ScenarioSpec::step, &StepControl::dt_init)},
        {"integrator.dt_min", sub_num(&ScenarioSpec::step, &StepControl::dt_min)},
        {"integrator.dt_max", sub_num(&ScenarioSpec::step, &StepControl::dt_max)},
        {"integrator.margin_guard", num(&ScenarioSpec::margin_guard)},
        {"output.snapshot_interval", num(&ScenarioSpec::snapshot_interval)},
        {"output.csv_interval", num(&ScenarioSpec::csv_interval)},
    };
    return table;
}

ScenarioSpec apply_tree(const pt::ptree& tree, ScenarioSpec spec) {
    // The plant choice decides which defaults the remaining keys override.
    if (auto plant = tree.get_optional<std::string>("scenario.plant")) {
        const std::string p = strip_quotes(*plant);
        const std::string keep_name = spec.name;
        if (p == "reactor" && spec.plant != PlantKind::reactor) spec = reactor_defaults();
        if (p == "sine-gordon" && spec.plant != PlantKind::sine_gordon) spec = sine_gordon_defaults();
        spec.name = keep_name;
    }
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) throw ConfigError("key '" + section + "' outside of a section");
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            auto it = setters().find(full);
            if (it == setters().end()) throw ConfigError("unknown config key '" + full + "'");
            it->second(spec, full, strip_quotes(value.data()));
        }
    }
    return spec;
}

}  // namespace

ScenarioSpec builtin_scenario(const std::string& name) {
    ScenarioSpec s;
    if (name == "reactor-paper" || name == "reactor-custom")
        s = reactor_defaults();
    else if (name == "sine-gordon-paper" || name == "sine-gordon-custom")
        s = sine_gordon_defaults();
    else
        throw ConfigError("unknown scenario '" + name + "'");
    s.name = name;
    return s;
}

ScenarioSpec apply_config_text(const std::string& text, ScenarioSpec base) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return apply_tree(tree, std::move(base));
}

ScenarioSpec apply_config_file(const std::string& path, ScenarioSpec base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return apply_config_text(ss.str(), std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string to_config_text(const ScenarioSpec& s) {
    std::ostringstream os;
    os.precision(17);
    os << "[scenario]\nname = " << s.name << "\nplant = " << (s.plant == PlantKind::reactor ? "reactor" : "sine-gordon")
       << "\ngrid = " << s.grid << "\nhorizon = " << s.horizon << "\n\n";
    if (s.plant == PlantKind::reactor)
        os << "[reactor]\ndelta = " << s.reactor.delta << "\nalpha = " << s.reactor.alpha << "\nmu = " << s.reactor.mu
           << "\nbeta = " << s.reactor.beta << "\nN = " << s.reactor.N << "\n\n";
    else
        os << "[sine-gordon]\nalpha = " << s.sine_gordon.alpha << "\nnu = " << s.sine_gordon.nu
           << "\nN = " << s.sine_gordon.N << "\n\n";
    os << "[initial]\nfamily = " << s.initial.family << "\namp1 = " << s.initial.amp1 << "\namp2 = " << s.initial.amp2
       << "\n\n";
    const ReferenceSpec& r = s.reference;
    os << "[reference]\nfamily = " << r.family << "\noffset = " << r.offset << "\ngain = " << r.gain
       << "\namplitude = " << r.amplitude << "\nrate = " << r.rate << "\nomega = " << r.omega << "\nvalue = " << r.value
       << "\n\n";
    os << "[funnel]\nfamily = exp-offset\na = " << s.funnel.a << "\nlambda = " << s.funnel.lambda
       << "\noffset = " << s.funnel.offset << "\n\n";
    os << "[disturbance]\nfamily = " << s.disturbance.family << "\namplitude = " << s.disturbance.amplitude
       << "\nomega = " << s.disturbance.omega << "\n\n";
    os << "[integrator]\ntol = " << s.step.tol << "\ndt_init = " << s.step.dt_init << "\ndt_min = " << s.step.dt_min
       << "\ndt_max = " << s.step.dt_max << "\nmargin_guard = " << s.margin_guard << "\n\n";
    os << "[output]\nsnapshot_interval = " << s.snapshot_interval << "\ncsv_interval = " << s.csv_interval << "\n";
    return os.str();
}

PlantPtr build_plant(const ScenarioSpec& spec) {
    if (spec.grid < 3) throw ConfigError("grid must have at least 3 nodes");
    auto grid = Grid::uniform(spec.grid);
    try {
        return spec.plant == PlantKind::reactor ? build_reactor(spec.reactor, grid)
                                                : build_sine_gordon(spec.sine_gordon, grid);
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
}

ProductState build_initial_state(const ScenarioSpec& spec, const GridPtr& grid) {
    const InitialSpec& in = spec.initial;
    if (in.family == "zero") return ProductState::zeros(grid);
    if (in.family == "cubic") {
        auto cubic = [](double z) { return -z * z * z + z * z + z; };
        return ProductState::sample(
            grid, [&](double z) { return in.amp1 * cubic(z); }, [&](double z) { return in.amp2 * cubic(z); });
    }
    if (in.family == "sine-poly") {
        return ProductState::sample(
            grid, [&](double z) { return in.amp1 * std::sin(pi * z / 2.0); },
            [&](double z) { return in.amp2 * (2.0 * z * z - z * z * z * z); });
    }
    throw ConfigError("unknown initial-state family '" + in.family + "'");
}

ScenarioConfig instantiate(const ScenarioSpec& spec) {
    ScenarioConfig cfg;
    cfg.name = spec.name;
    cfg.plant = build_plant(spec);
    cfg.x0 = build_initial_state(spec, cfg.plant->grid);
    cfg.y_ref = spec.reference.build();
    cfg.disturbance = spec.disturbance.build();
    try {
        cfg.funnel = FunnelSpec::exp_offset(spec.funnel.a, spec.funnel.lambda, spec.funnel.offset);
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
    cfg.horizon = spec.horizon;
    cfg.step = spec.step;
    cfg.margin_guard = spec.margin_guard;
    if (spec.snapshot_interval > 0.0) {
        const long n = std::lround(std::floor(spec.horizon / spec.snapshot_interval + 1e-9));
        for (long i = 0; i <= n; ++i) cfg.snapshot_times.push_back(static_cast<double>(i) * spec.snapshot_interval);
    }
    try {
        cfg.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    } catch (const StructuralError& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

}  // namespace funnelctl
