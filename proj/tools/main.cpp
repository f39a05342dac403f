#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "svip/acceptance.hpp"
#include "svip/experiments.hpp"
#include "svip/gamma_analytics.hpp"
#include "svip/identity_suite.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using svip::algorithms::Algorithm;
using svip::experiments::ConfigError;
using svip::experiments::ExperimentConfig;
using svip::experiments::Regime;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// ---- config file merging ----------------------------------------------------
//
// A config file is a flat JSON object whose keys are long flag names without
// the leading dashes ({"alg": "mv1", "trials": 2000, "n-grid": [256, 1024]}).
// Missing flags are synthesized as --key=value before parsing, so explicit
// command-line flags always win.

std::string config_value_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        std::string out;
        for (const auto& item : v) {
            if (!out.empty()) out += ',';
            out += config_value_to_string(item);
        }
        return out;
    }
    return v.dump();
}

std::vector<std::string> merge_config_file(const std::vector<std::string>& args) {
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw ConfigError("bad config file " + config_path + ": " + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");

    std::vector<std::string> merged = args;
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        bool present = false;
        for (const std::string& a : merged)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (!present) merged.push_back(flag + "=" + config_value_to_string(value));
    }
    return merged;
}

// ---- shared option plumbing ---------------------------------------------------

struct CommonOpts {
    std::string config_path; // consumed by merge_config_file; declared so CLI11 accepts it
    std::string out_dir;
    std::string format = "both";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    const char* env_dir = std::getenv("SVIP_OUT_DIR");
    opts.out_dir = env_dir != nullptr ? env_dir : ".";
    cmd->add_option("--config", opts.config_path, "JSON config file (flags win over its keys)");
    cmd->add_option("--out-dir", opts.out_dir, "artifact directory (default: $SVIP_OUT_DIR or .)");
    cmd->add_option("--format", opts.format, "artifact formats to write")
        ->check(CLI::IsMember({"csv", "json", "both"}));
}

void write_artifact(const CommonOpts& opts, const std::string& name, const std::string& payload) {
    fs::create_directories(opts.out_dir);
    const fs::path path = fs::path(opts.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write artifact: " + path.string());
    out << payload;
}

bool wants_csv(const CommonOpts& o) { return o.format == "csv" || o.format == "both"; }
bool wants_json(const CommonOpts& o) { return o.format == "json" || o.format == "both"; }

struct RuleOpts {
    std::string s_rule = "at";
    std::string v_rule;
    double eps = 0.1;
    double tau = 0.1;
};

void add_rules(CLI::App* cmd, RuleOpts& opts) {
    cmd->add_option("--s-rule", opts.s_rule,
                    "lower spacing rule: below|at|above the mean gap (alias: one-over-n)");
    cmd->add_option("--v-rule", opts.v_rule,
                    "upper spacing rule (default: above for gap repair, s-rule otherwise)");
    cmd->add_option("--eps", opts.eps, "offset for below/above s rules");
    cmd->add_option("--tau", opts.tau, "offset for the above v rule");
}

void apply_rules(ExperimentConfig& cfg, const RuleOpts& opts) {
    cfg.s_rule.regime = svip::experiments::regime_from_name(opts.s_rule);
    cfg.s_rule.offset = opts.eps;
    std::string v = opts.v_rule;
    if (v.empty()) {
        const bool repair = cfg.algorithm == Algorithm::I1 || cfg.algorithm == Algorithm::ID;
        v = repair ? "above" : opts.s_rule;
    }
    cfg.v_rule.regime = svip::experiments::regime_from_name(v);
    cfg.v_rule.offset = opts.tau;
}

std::vector<std::int64_t> parse_grid(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw ConfigError("bad n-grid entry: " + tok);
        }
    }
    if (out.empty()) throw ConfigError("n-grid must list at least one n");
    return out;
}

// ---- subcommands --------------------------------------------------------------

int cmd_simulate(const CommonOpts& common, const RuleOpts& rules, const std::string& alg_name,
                 std::int64_t n, int d, double a, std::uint64_t seed, std::uint64_t stream) {
    ExperimentConfig cfg;
    cfg.algorithm = svip::algorithms::algorithm_from_name(alg_name);
    cfg.n_grid = {n};
    cfg.a = a;
    cfg.d = d;
    cfg.trials = 1;
    cfg.base_seed = {seed, stream};
    apply_rules(cfg, rules);
    cfg.validate();

    const auto sp = svip::experiments::materialize_spacing(cfg, n);
    svip::algorithms::CostReport report;
    if (cfg.d == 1) {
        const auto dep = svip::deployment::sample_1d(n, static_cast<double>(n), cfg.base_seed);
        report = cfg.algorithm == Algorithm::MV1
                     ? svip::algorithms::mv1(dep, sp.s, cfg.a)
                     : svip::algorithms::i1(dep, {sp.s, sp.v, cfg.a});
    } else {
        const auto dep = svip::deployment::sample_grid(n, cfg.d, cfg.base_seed);
        report = cfg.algorithm == Algorithm::MVD
                     ? svip::algorithms::mvd(dep, sp.s, cfg.a)
                     : svip::algorithms::id(dep, {sp.s, sp.v, cfg.a});
    }

    const auto check = svip::algorithms::verify_ip(report, report.s, report.v);
    if (!check.ok) {
        std::cerr << "layout check failed: axis " << check.axis << " gap " << check.gap
                  << " at index " << check.index << "\n";
        return kExitFail;
    }

    json artifact = svip::experiments::cost_report_json(report, cfg.base_seed);
    artifact["config"] = svip::experiments::config_json(cfg);
    if (wants_json(common))
        write_artifact(common, "costreport_" + alg_name + ".json", artifact.dump(2) + "\n");
    if (wants_csv(common))
        write_artifact(common, "moves_" + alg_name + ".csv",
                       svip::experiments::cost_report_csv(report));

    std::cout << alg_name << " n=" << n << " total_cost=" << svip::experiments::format_g17(
                     report.total_cost)
              << " moved=" << report.moved_count << "\n";
    return kExitPass;
}

int cmd_sweep(const CommonOpts& common, ExperimentConfig cfg, const RuleOpts& rules,
              double predicted_override, bool has_override) {
    apply_rules(cfg, rules);
    cfg.validate();
    const auto result = svip::experiments::run_regime_suite(
        cfg, has_override ? predicted_override : std::numeric_limits<double>::quiet_NaN());

    if (wants_csv(common)) write_artifact(common, "sweep.csv", svip::experiments::sweep_csv(result));
    if (wants_json(common))
        write_artifact(common, "sweep.json",
                       svip::experiments::sweep_json(cfg, result).dump(2) + "\n");

    for (const auto& row : result.rows)
        std::cout << "n=" << row.n << " mean=" << svip::experiments::format_g17(row.mean_cost)
                  << " se=" << svip::experiments::format_g17(row.std_error) << "\n";
    for (const auto& w : result.fit.warnings) std::cout << "warning: " << w << "\n";
    std::cout << "slope=" << result.fit.slope << " +- " << result.fit.slope_std_error
              << " predicted=" << result.predicted
              << " test=" << (result.two_sided ? "two-sided" : "one-sided")
              << " tol=" << result.tol << " verdict=" << (result.pass ? "PASS" : "FAIL") << "\n";
    return result.pass ? kExitPass : kExitFail;
}

int cmd_exact(const std::string& grid_csv, unsigned a, double eps1, const std::string& route_name) {
    using svip::combinatorics::PowerSumRoute;
    PowerSumRoute route = PowerSumRoute::Auto;
    if (route_name == "direct") route = PowerSumRoute::Direct;
    else if (route_name == "closed-form") route = PowerSumRoute::ClosedForm;
    else if (route_name != "auto") throw ConfigError("unknown route: " + route_name);
    if (a == 0 || a % 2 != 0) throw ConfigError("exact costs require even a >= 2");

    const auto grid = parse_grid(grid_csv);
    const double lead = eps1 > 0.0
                            ? std::pow(eps1, static_cast<double>(a)) / (static_cast<double>(a) + 1.0)
                            : svip::to_double(svip::gamma_analytics::at_threshold_leading_constant(a));
    const double expo = eps1 > 0.0 ? 1.0 : 1.0 - static_cast<double>(a) / 2.0;
    std::cout << "leading term: " << svip::experiments::format_g17(lead) << " * n^"
              << svip::experiments::format_g17(expo) << "\n";
    std::cout << "n,exact_cost,leading_term,ratio\n";
    for (std::int64_t n : grid) {
        if (n < 1) throw ConfigError("exact costs require n >= 1");
        const double exact = svip::gamma_analytics::exact_mv1_cost(n, a, eps1, route);
        const double approx = lead * std::pow(static_cast<double>(n), expo);
        std::cout << n << "," << svip::experiments::format_g17(exact) << ","
                  << svip::experiments::format_g17(approx) << ","
                  << svip::experiments::format_g17(approx != 0.0 ? exact / approx : 0.0) << "\n";
    }
    return kExitPass;
}

int cmd_identities(unsigned max_a, unsigned max_m, bool corrupt) {
    if (max_a % 2 != 0) throw ConfigError("max-a must be even");
    if (max_m > 30) throw ConfigError("max-m beyond 30 is not part of the exact suite");
    const auto suite = svip::identities::run_default_suite(max_a, max_m, corrupt);
    std::cout << suite.checks << " identity checks, " << suite.mismatches.size()
              << " mismatches\n";
    for (const auto& m : suite.mismatches) std::cout << "[mismatch] " << m << "\n";
    return suite.ok() ? kExitPass : kExitFail;
}

int cmd_bounds(const std::string& grid_csv, double a, double s_mult, double v_mult) {
    if (!(s_mult > 0.0) || !(s_mult < 1.0))
        throw ConfigError("s-mult must sit strictly below 1 (spacing under the mean gap)");
    if (!(v_mult > 1.0)) throw ConfigError("v-mult must sit strictly above 1");
    if (!(a > 0.0)) throw ConfigError("a must be positive");

    const auto grid = parse_grid(grid_csv);
    std::cout << "n,undershoot,overshoot,total,normalized\n";
    for (std::int64_t n : grid) {
        if (n < 1) throw ConfigError("bounds require n >= 1");
        const double nn = static_cast<double>(n);
        const auto under = svip::gamma_analytics::undershoot_bound_sum(n, s_mult / nn, a);
        const auto over = svip::gamma_analytics::overshoot_bound_sum(n, v_mult / nn, a);
        if (!under.in_regime || !over.in_regime)
            throw ConfigError("bound sums left their regime; check the multipliers");
        const double total = under.value + over.value;
        std::cout << n << "," << svip::experiments::format_g17(under.value) << ","
                  << svip::experiments::format_g17(over.value) << ","
                  << svip::experiments::format_g17(total) << ","
                  << svip::experiments::format_g17(std::pow(nn, a - 1.0) * total) << "\n";
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and verification toolkit for spacing-band sensor displacement"};
    app.require_subcommand(1);

    // simulate ------------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "run one algorithm on one sampled deployment");
    CommonOpts sim_common;
    RuleOpts sim_rules;
    std::string sim_alg;
    std::int64_t sim_n = 0;
    int sim_d = 1;
    double sim_a = 1.0;
    std::uint64_t sim_seed = 1, sim_stream = 0;
    sim->add_option("--alg", sim_alg, "algorithm: mv1|i1|mvd|id")->required();
    sim->add_option("--n", sim_n, "sensor count")->required();
    sim->add_option("--d", sim_d, "dimension (grids need n = m^d)");
    sim->add_option("--a", sim_a, "cost exponent");
    sim->add_option("--seed", sim_seed, "seed");
    sim->add_option("--stream", sim_stream, "stream index");
    add_rules(sim, sim_rules);
    add_common(sim, sim_common);

    // sweep ---------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "estimate mean cost over an n grid and fit the slope");
    CommonOpts sweep_common;
    RuleOpts sweep_rules;
    ExperimentConfig sweep_cfg;
    std::string sweep_alg = "mv1", sweep_grid;
    std::uint64_t sweep_seed = 1, sweep_stream = 0;
    double sweep_predicted = 0.0;
    sweep->add_option("--alg", sweep_alg, "algorithm: mv1|i1|mvd|id");
    sweep->add_option("--n-grid", sweep_grid, "comma-separated n values")->required();
    sweep->add_option("--a", sweep_cfg.a, "cost exponent");
    sweep->add_option("--d", sweep_cfg.d, "dimension");
    sweep->add_option("--trials", sweep_cfg.trials, "Monte Carlo trials per n");
    sweep->add_option("--seed", sweep_seed, "seed");
    sweep->add_option("--stream", sweep_stream, "base stream index");
    sweep->add_option("--workers", sweep_cfg.workers, "worker threads (0 = auto)");
    sweep->add_option("--tol", sweep_cfg.slope_tol, "slope tolerance");
    auto* pred_opt = sweep->add_option("--predicted", sweep_predicted,
                                       "override the predicted scaling exponent");
    add_rules(sweep, sweep_rules);
    add_common(sweep, sweep_common);

    // exact ---------------------------------------------------------------
    auto* exact = app.add_subcommand("exact", "closed-form expected fixed-spacing cost");
    std::string exact_grid;
    unsigned exact_a = 2;
    double exact_eps1 = 0.0;
    std::string exact_route = "auto";
    exact->add_option("--n-grid", exact_grid, "comma-separated n values")->required();
    exact->add_option("--a", exact_a, "even cost exponent");
    exact->add_option("--eps1", exact_eps1, "spacing excess over the mean gap");
    exact->add_option("--route", exact_route, "power-sum route: auto|direct|closed-form");

    // identities ----------------------------------------------------------
    auto* ident = app.add_subcommand("identities", "exact combinatorial identity suite");
    unsigned ident_max_a = 20, ident_max_m = 30;
    bool ident_corrupt = false;
    ident->add_option("--max-a", ident_max_a, "largest even exponent for alternating sums");
    ident->add_option("--max-m", ident_max_m, "largest row for table identities");
    ident->add_flag("--corrupt-table", ident_corrupt,
                    "debug: serve one wrong table value to prove mismatches are detected")
        ->group(""); // hidden
    // verify --------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    std::string verify_tier = "quick";
    int verify_criterion = 0;
    std::uint64_t verify_seed = 7;
    int verify_workers = 0;
    verify->add_option("--tier", verify_tier, "quick|full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--criterion", verify_criterion, "run a single criterion (1-11)");
    verify->add_option("--seed", verify_seed, "seed");
    verify->add_option("--workers", verify_workers, "worker threads (0 = auto)");

    // bounds --------------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "displacement cost bound sums");
    std::string bounds_grid = "100,1000,10000";
    double bounds_a = 2.0, bounds_s = 0.9, bounds_v = 1.1;
    bounds->add_option("--n-grid", bounds_grid, "comma-separated n values");
    bounds->add_option("--a", bounds_a, "cost exponent");
    bounds->add_option("--s-mult", bounds_s, "s = s-mult / n, must be < 1");
    bounds->add_option("--v-mult", bounds_v, "v = v-mult / n, must be > 1");

    // ----------------------------------------------------------------------
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config_file(args);
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_common, sim_rules, sim_alg, sim_n, sim_d, sim_a, sim_seed,
                                sim_stream);
        if (sweep->parsed()) {
            sweep_cfg.algorithm = svip::algorithms::algorithm_from_name(sweep_alg);
            sweep_cfg.n_grid = parse_grid(sweep_grid);
            sweep_cfg.base_seed = {sweep_seed, sweep_stream};
            return cmd_sweep(sweep_common, sweep_cfg, sweep_rules, sweep_predicted,
                             pred_opt->count() > 0);
        }
        if (exact->parsed()) return cmd_exact(exact_grid, exact_a, exact_eps1, exact_route);
        if (ident->parsed()) return cmd_identities(ident_max_a, ident_max_m, ident_corrupt);
        if (verify->parsed())
            return svip::acceptance::run_and_report(std::cout,
                                                    svip::acceptance::tier_from_name(verify_tier),
                                                    verify_seed, verify_workers, verify_criterion);
        if (bounds->parsed()) return cmd_bounds(bounds_grid, bounds_a, bounds_s, bounds_v);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
