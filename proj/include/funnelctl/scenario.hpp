#pragma once

#include "funnelctl/plants.hpp"
#include "funnelctl/simulation.hpp"

#include <string>
#include <vector>

namespace funnelctl {

struct InitialSpec {
    // reactor "cubic":      theta_k(z) = amp_k (-z^3 + z^2 + z)
    // sine-gordon "sine-poly": x = amp_1 sin(pi z / 2), x_t = amp_2 (2 z^2 - z^4)
    // "zero": zero state
    std::string family;
    double amp1 = 0.0;
    double amp2 = 0.0;
};

struct ReferenceSpec {
    // arctan:   offset + gain atan(t)
    // cos-exp:  amplitude cos(exp(-rate t))
    // constant: value
    // sine:     offset + amplitude sin(omega t)
    std::string family = "constant";
    double offset = 0.0;
    double gain = 0.0;
    double amplitude = 0.0;
    double rate = 0.0;
    double omega = 0.0;
    double value = 0.0;

    Signal build() const;
};

struct DisturbanceSpec {
    // none | constant (amplitude) | sine (amplitude sin(omega t))
    std::string family = "none";
    double amplitude = 0.0;
    double omega = 0.0;

    Signal build() const;
};

struct FunnelParams {
    double a = 1.0;
    double lambda = 2.0;
    double offset = 2.5e-3;
};

struct ScenarioSpec {
    std::string name;
    PlantKind plant = PlantKind::reactor;
    ReactorParams reactor;
    SineGordonParams sine_gordon;
    int grid = 201;
    double horizon = 10.0;
    InitialSpec initial;
    ReferenceSpec reference;
    FunnelParams funnel;
    DisturbanceSpec disturbance;
    StepControl step;
    double margin_guard = 1e-3;
    double snapshot_interval = 0.5;
    double csv_interval = 1e-3;
};

std::vector<std::string> list_scenarios();
bool scenario_requires_config(const std::string& name);
// Built-in defaults for a scenario name; throws ConfigError for unknown names.
ScenarioSpec builtin_scenario(const std::string& name);
// Applies an INI-style config file on top of `base`. Unknown sections or keys are errors.
ScenarioSpec apply_config_file(const std::string& path, ScenarioSpec base);
ScenarioSpec apply_config_text(const std::string& text, ScenarioSpec base);
std::string to_config_text(const ScenarioSpec& spec);

PlantPtr build_plant(const ScenarioSpec& spec);
ProductState build_initial_state(const ScenarioSpec& spec, const GridPtr& grid);
ScenarioConfig instantiate(const ScenarioSpec& spec);

}  // namespace funnelctl
