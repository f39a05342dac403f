#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "svip/algorithms.hpp"
#include "svip/rng.hpp"

namespace svip::experiments {

// Invalid experiment setups surface as this; the command-line layer turns it
// into the usage exit code.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Regime { Below, At, Above };

// Spacing rule relative to the mean gap of the deployment: the materialized
// spacing is multiplier() / m where m is the per-axis arrival count (m = n in
// 1D).  `offset` is the eps/tau margin and must be positive (and < 1 for
// Below); At ignores it.
struct RegimeRule {
    Regime regime = Regime::At;
    double offset = 0.1;

    double multiplier() const;
    void validate(const char* which) const;
};

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);

struct ExperimentConfig {
    algorithms::Algorithm algorithm = algorithms::Algorithm::MV1;
    std::vector<std::int64_t> n_grid;
    double a = 2.0;
    int d = 1;
    RegimeRule s_rule;
    RegimeRule v_rule;
    std::int64_t trials = 1000;
    rng::RngSeed base_seed;
    int workers = 0; // 0 = hardware concurrency; never echoed into artifacts
    double slope_tol = 0.1;

    void validate() const; // throws ConfigError
};

// Materialized spacings for one n of the grid.
struct SpacingPair {
    double s = 0.0;
    double v = 0.0;
};
SpacingPair materialize_spacing(const ExperimentConfig& cfg, std::int64_t n);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
};

// Mean cost over cfg.trials independent deployments of size n.  Trial t draws
// from stream base_seed.stream + t; per-trial costs land in a preallocated
// slot vector and are reduced by a fixed pairwise tree, so the result is
// byte-identical for any worker count.
Estimate estimate_mean_cost(const ExperimentConfig& cfg, std::int64_t n);

struct SweepRow {
    std::int64_t n = 0;
    double mean_cost = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_std_error = 0.0;
    int used_rows = 0;
    std::vector<std::string> warnings;
};

// OLS of ln(mean_cost) on ln(n).  Rows with nonpositive means are dropped
// with a warning; fewer than 3 usable rows is an error.
FitResult fit_scaling_exponent(std::span<const SweepRow> rows);

// Scaling exponent the sweep is expected to produce, from the regime the
// config encodes: fixed-spacing runs give 1 - a/(2d) at threshold and 1 above
// it (two-sided test when a >= 1); gap-repair runs give 1 - a/d as a
// one-sided ceiling.
double predicted_exponent(const ExperimentConfig& cfg);
bool exponent_test_two_sided(const ExperimentConfig& cfg);

struct SweepResult {
    std::vector<SweepRow> rows;
    FitResult fit;
    double predicted = 0.0;
    bool two_sided = true;
    double tol = 0.1;
    bool pass = false;
};

// Full pipeline: validate, estimate each n, fit, compare against the
// prediction (or `predicted_override` if given, NaN means none).
SweepResult run_regime_suite(const ExperimentConfig& cfg,
                             double predicted_override = std::numeric_limits<double>::quiet_NaN());

struct CrossCheck {
    double exact = 0.0;
    double mc_mean = 0.0;
    double std_error = 0.0;
    double z = 0.0;
};

// Monte Carlo mean of the fixed-spacing 1D cost at spacing (1+eps1)/n versus
// its closed-form expectation, as a z-score.
CrossCheck crosscheck_exact_vs_mc(std::int64_t n, unsigned a, double eps1, std::int64_t trials,
                                  rng::RngSeed seed, int workers = 0);

// ---- artifact serialization -------------------------------------------------
//
// Everything below is deterministic: doubles are printed with "%.17g" (CSV)
// or nlohmann's shortest-roundtrip form (JSON), no timestamps, and the worker
// count is deliberately absent so reruns with different parallelism stay
// byte-identical.

std::string format_g17(double x);

nlohmann::json config_json(const ExperimentConfig& cfg);
std::string sweep_csv(const SweepResult& result);
nlohmann::json sweep_json(const ExperimentConfig& cfg, const SweepResult& result);

nlohmann::json cost_report_json(const algorithms::CostReport& report, rng::RngSeed seed);
std::string cost_report_csv(const algorithms::CostReport& report);

} // namespace svip::experiments
