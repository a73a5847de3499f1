#pragma once

#include "funnelctl/decomposition.hpp"
#include "funnelctl/scenario.hpp"
#include "funnelctl/simulation.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace funnelctl {

struct LyapunovReport {
    std::string plant;
    int m = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    // reactor: max (2<Q eta, P eta> + |eta|^2) / |eta|^2; sine-Gordon: max |2<A z, Pi z> + |z|^2| / |z|^2
    double max_excess = 0.0;
    // max distance from the continuum value, normalised by |eta|^2
    double max_defect = 0.0;
    // reactor only: max |2<Q2 eta2, P2 eta2> + |eta2|^2| / |eta|^2
    double second_block_defect = 0.0;
    // sine-Gordon only: min <Pi z, z> / |z|^2 against 1/(2 alpha)
    double min_coercivity = 0.0;
    double coercivity_bound = 0.0;
    bool pass = false;
};

LyapunovReport lyapunov_check_reactor(const GridPtr& grid, const ReactorParams& p, int samples, std::uint64_t seed,
                                      double tol = 1e-2);
LyapunovReport lyapunov_check_sine_gordon(const GridPtr& grid, const SineGordonParams& p, int samples,
                                          std::uint64_t seed, double tol = 1e-3);

struct RefinementReport {
    std::vector<LyapunovReport> levels;
    double floor = 1e-11;  // defects below this are treated as round-off and compare equal
    bool defects_decrease = false;
    bool pass = false;
};

RefinementReport lyapunov_refinement(PlantKind kind, const std::vector<int>& grids, int samples, std::uint64_t seed);

struct SpectrumReport {
    std::string plant;
    std::string status;  // pass | fail | inconclusive
    int m = 0;
    int dim = 0;
    double max_real = 0.0;
    double spectral_margin = 0.0;
    double p0 = 0.0;
    // sine-Gordon: eigenvalue of the (y, eta) block operator nearest to p0, and its distance
    double block_eig_near_p0 = 0.0;
    double block_distance_to_p0 = 0.0;
    // max real part of the discrete generator A itself
    double max_real_A = 0.0;
    bool pass = false;
};

SpectrumReport spectrum_check_Q(const Decomposition& ctx, double spectral_margin = 1e-3);

struct InputBank {
    std::vector<Signal> y;
    std::vector<EtaState> eta0;
    std::vector<std::string> labels;
};

// Bounded periodic and constant inputs with sup |y| <= k, paired with eta0 in I with |eta0| <= k_hat.
InputBank make_input_bank(const Decomposition& ctx, int count, double k, double k_hat, std::uint64_t seed);

struct BisboEntry {
    std::string label;
    double sup_first = 0.0;  // sup |eta| on [0, horizon]
    double sup_full = 0.0;   // sup |eta| on [0, 2 horizon]
    double growth = 0.0;
    double drift = 0.0;
};

struct BisboReport {
    std::string plant;
    double horizon = 0.0;
    double growth_limit = 0.05;
    double max_sup = 0.0;
    double max_growth = 0.0;
    double max_drift = 0.0;
    std::vector<BisboEntry> entries;
    bool pass = false;
};

BisboReport bisbo_probe(const Decomposition& ctx, const InputBank& bank, double horizon = 10.0,
                        const EtaOptions& opts = {});

struct TSuiteOptions {
    std::uint64_t seed = 7;
    double sample_dt = 0.01;
    double horizon = 10.0;
    double prefix = 5.0;
    int causality_pairs = 10;
    int bibo_signals = 10;
    double amplitude = 1.0;
    double lipschitz_t = 2.0;
    double lipschitz_tau = 0.5;
    std::vector<double> lipschitz_deltas{0.08, 0.04, 0.02, 0.01};
    EtaOptions eta;
};

struct TSuiteReport {
    std::string plant;
    double causality_max_diff = 0.0;
    bool causality_pass = false;
    double bibo_sup_first = 0.0;
    double bibo_sup_full = 0.0;
    double bibo_max_growth = 0.0;
    bool bibo_pass = false;
    std::vector<double> lipschitz_ratios;
    double lipschitz_max_factor = 0.0;
    bool lipschitz_pass = false;
    bool pass = false;
};

TSuiteReport t_operator_property_suite(const Decomposition& ctx, const TSuiteOptions& opts = {});

struct SweepLevel {
    int N = 0;
    double indicator_distance = 0.0;  // |1 - 1_N| in L2, fine quadrature
    double parseval_tail = 0.0;       // sqrt of the series tail
    double b_distance = 0.0;
    double c_distance = 0.0;
    double sup_rho = 0.0;
    double sup_lambda = 0.0;
    double fitted_C = 0.0;  // sup|lambda| / (|b - b_N| + |c - c_N|)
    double eps_min = 0.0;
};

struct SweepReport {
    int N_ref = 199;
    std::vector<SweepLevel> levels;
    bool indicator_decreasing = false;
    bool parseval_match = false;
    bool lambda_nonincreasing = false;
    bool rho_nonincreasing = false;
    bool pass = false;
};

double indicator_distance_fine(int N, int fine_nodes = 40001);
double parseval_tail(int N);

SweepReport approximation_sweep(const ScenarioSpec& scenario, const std::vector<int>& Ns, int N_ref = 199);

struct ClosedFormReport {
    double sg_p0 = 0.0;
    double sg_p0_closed = 0.0;
    bool sg_p0_pass = false;
    double pi_astar_c_norm = 0.0;
    double astar_c_norm = 0.0;
    double s_bound = 0.0;
    bool s_pass = false;
    double reactor_gamma = 0.0;
    double reactor_gamma_series = 0.0;
    bool gamma_pass = false;
    bool pass = false;
};

ClosedFormReport closed_form_checks(int m = 801);

nlohmann::json to_json(const LyapunovReport& r);
nlohmann::json to_json(const RefinementReport& r);
nlohmann::json to_json(const SpectrumReport& r);
nlohmann::json to_json(const BisboReport& r);
nlohmann::json to_json(const TSuiteReport& r);
nlohmann::json to_json(const SweepReport& r);
nlohmann::json to_json(const ClosedFormReport& r);

}  // namespace funnelctl
