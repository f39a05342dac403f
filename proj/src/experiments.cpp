#include "svip/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "svip/gamma_analytics.hpp"
#include "svip/stats.hpp"

namespace svip::experiments {

using algorithms::Algorithm;

double RegimeRule::multiplier() const {
    switch (regime) {
        case Regime::Below: return 1.0 - offset;
        case Regime::At: return 1.0;
        case Regime::Above: return 1.0 + offset;
    }
    return 1.0;
}

void RegimeRule::validate(const char* which) const {
    if (regime == Regime::At) return;
    if (!(offset > 0.0))
        throw ConfigError(std::string(which) + ": offset must be positive");
    if (regime == Regime::Below && !(offset < 1.0))
        throw ConfigError(std::string(which) + ": below-threshold offset must be < 1");
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Below: return "below";
        case Regime::At: return "at";
        case Regime::Above: return "above";
    }
    return "at";
}

Regime regime_from_name(const std::string& name) {
    if (name == "below") return Regime::Below;
    if (name == "at" || name == "one-over-n") return Regime::At;
    if (name == "above") return Regime::Above;
    throw ConfigError("unknown regime: " + name);
}

namespace {

bool is_fixed_spacing(Algorithm alg) { return alg == Algorithm::MV1 || alg == Algorithm::MVD; }
bool is_grid(Algorithm alg) { return alg == Algorithm::MVD || alg == Algorithm::ID; }

std::int64_t axis_count(const ExperimentConfig& cfg, std::int64_t n) {
    if (!is_grid(cfg.algorithm)) return n;
    std::int64_t m = 0;
    if (!deployment::perfect_power_root(n, cfg.d, &m))
        throw ConfigError("n = " + std::to_string(n) + " is not a perfect power for d = " +
                          std::to_string(cfg.d));
    return m;
}

} // namespace

void ExperimentConfig::validate() const {
    if (n_grid.empty()) throw ConfigError("n_grid must be nonempty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 2) throw ConfigError("every n must be >= 2");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw ConfigError("n_grid must be strictly increasing");
    }
    if (!(a > 0.0)) throw ConfigError("a must be positive");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (!(slope_tol > 0.0)) throw ConfigError("slope_tol must be positive");
    s_rule.validate("s_rule");
    v_rule.validate("v_rule");

    const bool grid = is_grid(algorithm);
    if (grid && d < 2) throw ConfigError("grid algorithms require d >= 2");
    if (!grid && d != 1) throw ConfigError("1D algorithms require d = 1");
    if (grid)
        for (std::int64_t n : n_grid) (void)axis_count(*this, n);

    if (is_fixed_spacing(algorithm)) {
        if (s_rule.regime == Regime::Below)
            throw ConfigError("fixed-spacing runs need the spacing at or above the mean gap");
    } else {
        if (s_rule.regime != Regime::Below || v_rule.regime != Regime::Above)
            throw ConfigError("gap-repair runs need s below and v above the mean gap");
    }
    if (s_rule.multiplier() > v_rule.multiplier() + 1e-15 && !is_fixed_spacing(algorithm))
        throw ConfigError("s must not exceed v");
}

SpacingPair materialize_spacing(const ExperimentConfig& cfg, std::int64_t n) {
    const double m = static_cast<double>(axis_count(cfg, n));
    SpacingPair out;
    out.s = cfg.s_rule.multiplier() / m;
    if (is_fixed_spacing(cfg.algorithm)) {
        out.v = out.s; // the fixed-spacing layout realizes every gap as s
    } else {
        out.v = cfg.v_rule.multiplier() / m;
    }
    return out;
}

namespace {

double one_trial_cost(const ExperimentConfig& cfg, std::int64_t n, const SpacingPair& sp,
                      std::int64_t trial) {
    rng::RngSeed key{cfg.base_seed.seed, cfg.base_seed.stream + static_cast<std::uint64_t>(trial)};
    switch (cfg.algorithm) {
        case Algorithm::MV1: {
            const auto dep = deployment::sample_1d(n, static_cast<double>(n), key);
            return algorithms::mv1(dep, sp.s, cfg.a).total_cost;
        }
        case Algorithm::I1: {
            const auto dep = deployment::sample_1d(n, static_cast<double>(n), key);
            return algorithms::i1(dep, {sp.s, sp.v, cfg.a}).total_cost;
        }
        case Algorithm::MVD: {
            const auto dep = deployment::sample_grid(n, cfg.d, key);
            return algorithms::mvd(dep, sp.s, cfg.a).total_cost;
        }
        case Algorithm::ID: {
            const auto dep = deployment::sample_grid(n, cfg.d, key);
            return algorithms::id(dep, {sp.s, sp.v, cfg.a}).total_cost;
        }
    }
    return 0.0;
}

} // namespace

Estimate estimate_mean_cost(const ExperimentConfig& cfg, std::int64_t n) {
    cfg.validate();
    if (std::find(cfg.n_grid.begin(), cfg.n_grid.end(), n) == cfg.n_grid.end())
        throw ConfigError("estimate_mean_cost: n must be taken from cfg.n_grid");
    const SpacingPair sp = materialize_spacing(cfg, n);

    std::vector<double> costs(static_cast<std::size_t>(cfg.trials));
    int workers = cfg.workers > 0 ? cfg.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(cfg.trials)));

    // Contiguous trial chunks; every chunk writes its own slots, so the only
    // shared state is the preallocated vector itself.
    if (workers == 1) {
        for (std::int64_t t = 0; t < cfg.trials; ++t)
            costs[static_cast<std::size_t>(t)] = one_trial_cost(cfg, n, sp, t);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const std::int64_t chunk = (cfg.trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min<std::int64_t>(cfg.trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::int64_t t = lo; t < hi; ++t)
                    costs[static_cast<std::size_t>(t)] = one_trial_cost(cfg, n, sp, t);
            });
        }
        for (auto& th : pool) th.join();
    }

    const auto ms = stats::mean_std_error(costs);
    return {ms.mean, ms.std_error, cfg.trials};
}

FitResult fit_scaling_exponent(std::span<const SweepRow> rows) {
    FitResult out;
    std::vector<double> x, y;
    for (const auto& row : rows) {
        if (!(row.mean_cost > 0.0)) {
            out.warnings.push_back("dropped n=" + std::to_string(row.n) +
                                   " (nonpositive mean cost)");
            continue;
        }
        x.push_back(std::log(static_cast<double>(row.n)));
        y.push_back(std::log(row.mean_cost));
    }
    if (x.size() < 3)
        throw std::runtime_error("fit_scaling_exponent: needs at least 3 usable rows");
    const auto fit = stats::ols(x, y);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.slope_std_error = fit.slope_std_error;
    out.used_rows = static_cast<int>(x.size());
    return out;
}

double predicted_exponent(const ExperimentConfig& cfg) {
    const double dd = static_cast<double>(cfg.d);
    if (is_fixed_spacing(cfg.algorithm))
        return cfg.s_rule.regime == Regime::At ? 1.0 - cfg.a / (2.0 * dd) : 1.0;
    return 1.0 - cfg.a / dd;
}

bool exponent_test_two_sided(const ExperimentConfig& cfg) {
    return is_fixed_spacing(cfg.algorithm) && cfg.a >= 1.0;
}

SweepResult run_regime_suite(const ExperimentConfig& cfg, double predicted_override) {
    cfg.validate();
    SweepResult result;
    result.tol = cfg.slope_tol;
    result.two_sided = exponent_test_two_sided(cfg);
    result.predicted = std::isnan(predicted_override) ? predicted_exponent(cfg) : predicted_override;
    for (std::int64_t n : cfg.n_grid) {
        const Estimate est = estimate_mean_cost(cfg, n);
        result.rows.push_back({n, est.mean, est.std_error, est.trials});
    }
    result.fit = fit_scaling_exponent(result.rows);
    result.pass = result.two_sided
                      ? std::fabs(result.fit.slope - result.predicted) <= result.tol
                      : result.fit.slope <= result.predicted + result.tol;
    return result;
}

CrossCheck crosscheck_exact_vs_mc(std::int64_t n, unsigned a, double eps1, std::int64_t trials,
                                  rng::RngSeed seed, int workers) {
    ExperimentConfig cfg;
    cfg.algorithm = Algorithm::MV1;
    cfg.n_grid = {n};
    cfg.a = static_cast<double>(a);
    cfg.d = 1;
    cfg.s_rule = {eps1 == 0.0 ? Regime::At : Regime::Above, eps1};
    cfg.v_rule = cfg.s_rule;
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.workers = workers;
    const Estimate est = estimate_mean_cost(cfg, n);
    CrossCheck out;
    out.exact = gamma_analytics::exact_mv1_cost(n, a, eps1);
    out.mc_mean = est.mean;
    out.std_error = est.std_error;
    out.z = est.std_error > 0.0 ? (est.mean - out.exact) / est.std_error
                                : std::numeric_limits<double>::infinity();
    return out;
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
    return {
        {"algorithm", algorithms::algorithm_name(cfg.algorithm)},
        {"n_grid", cfg.n_grid},
        {"a", cfg.a},
        {"d", cfg.d},
        {"s_rule", {{"regime", regime_name(cfg.s_rule.regime)}, {"offset", cfg.s_rule.offset}}},
        {"v_rule", {{"regime", regime_name(cfg.v_rule.regime)}, {"offset", cfg.v_rule.offset}}},
        {"trials", cfg.trials},
        {"seed", {{"seed", cfg.base_seed.seed}, {"stream", cfg.base_seed.stream}}},
        {"slope_tol", cfg.slope_tol},
    };
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "n,mean_cost,std_error,trials\n";
    for (const auto& row : result.rows) {
        out += std::to_string(row.n);
        out += ',';
        out += format_g17(row.mean_cost);
        out += ',';
        out += format_g17(row.std_error);
        out += ',';
        out += std::to_string(row.trials);
        out += '\n';
    }
    return out;
}

nlohmann::json sweep_json(const ExperimentConfig& cfg, const SweepResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows)
        rows.push_back({{"n", row.n},
                        {"mean_cost", row.mean_cost},
                        {"std_error", row.std_error},
                        {"trials", row.trials}});
    return {
        {"config", config_json(cfg)},
        {"rows", rows},
        {"fit",
         {{"slope", result.fit.slope},
          {"intercept", result.fit.intercept},
          {"slope_std_error", result.fit.slope_std_error},
          {"used_rows", result.fit.used_rows},
          {"warnings", result.fit.warnings}}},
        {"predicted_exponent", result.predicted},
        {"test", result.two_sided ? "two-sided" : "one-sided"},
        {"tol", result.tol},
        {"verdict", result.pass ? "PASS" : "FAIL"},
    };
}

nlohmann::json cost_report_json(const algorithms::CostReport& report, rng::RngSeed seed) {
    return {
        {"algorithm", algorithms::algorithm_name(report.algorithm)},
        {"n", report.n},
        {"d", report.d},
        {"s", report.s},
        {"v", report.v},
        {"a", report.a},
        {"total_cost", report.total_cost},
        {"moved_count", report.moved_count},
        {"hyperplane_weight", report.hyperplane_weight},
        {"seed", {{"seed", seed.seed}, {"stream", seed.stream}}},
    };
}

std::string cost_report_csv(const algorithms::CostReport& report) {
    const bool grid = report.final_axes.size() > 1;
    std::string out = grid ? "axis,index,initial,final,displacement\n"
                           : "index,initial,final,displacement\n";
    for (std::size_t k = 0; k < report.final_axes.size(); ++k) {
        const auto& finals = report.final_axes[k];
        const auto& disp = report.axis_displacements[k];
        for (std::size_t i = 0; i < finals.size(); ++i) {
            if (grid) {
                out += std::to_string(k);
                out += ',';
            }
            out += std::to_string(i + 1);
            out += ',';
            out += format_g17(finals[i] - disp[i]);
            out += ',';
            out += format_g17(finals[i]);
            out += ',';
            out += format_g17(disp[i]);
            out += '\n';
        }
    }
    return out;
}

} // namespace svip::experiments
