#include "svip/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "svip/experiments.hpp"
#include "svip/gamma_analytics.hpp"
#include "svip/identity_suite.hpp"
#include "svip/quadrature.hpp"
#include "svip/stats.hpp"

namespace svip::acceptance {

using algorithms::Algorithm;
using experiments::ExperimentConfig;
using experiments::Regime;
using gamma_analytics::GammaArrival;

namespace {

std::string fmt(double x, const char* format = "%.6g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

// Distinct stream block per criterion so no two criteria share trial streams.
rng::RngSeed criterion_seed(std::uint64_t seed, int id) {
    return {seed, static_cast<std::uint64_t>(id) * 1000000000ull};
}

ExperimentConfig sweep_config(Algorithm alg, std::vector<std::int64_t> n_grid, double a, int d,
                              experiments::RegimeRule s_rule, experiments::RegimeRule v_rule,
                              std::int64_t trials, rng::RngSeed seed, int workers) {
    ExperimentConfig cfg;
    cfg.algorithm = alg;
    cfg.n_grid = std::move(n_grid);
    cfg.a = a;
    cfg.d = d;
    cfg.s_rule = s_rule;
    cfg.v_rule = v_rule;
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.workers = workers;
    return cfg;
}

// ln-ln OLS slope of the closed-form expected cost over a grid: what a
// noise-free sweep of the fixed-spacing algorithm would measure.  d >= 2
// takes m = n^(1/d) axis points at rate m, each axis shared by m^(d-1)
// sensors.
double analytic_fixed_spacing_slope(const std::vector<std::int64_t>& n_grid, int d, unsigned a,
                                    double eps) {
    std::vector<double> x, y;
    for (std::int64_t n : n_grid) {
        std::int64_t m = n;
        if (d > 1 && !deployment::perfect_power_root(n, d, &m))
            throw std::invalid_argument("analytic slope: grid value is not a perfect power");
        const double axis_mean = gamma_analytics::exact_mv1_cost(m, a, eps);
        const double weight = static_cast<double>(d) * std::pow(static_cast<double>(m), d - 1);
        x.push_back(std::log(static_cast<double>(n)));
        y.push_back(std::log(weight * axis_mean));
    }
    return stats::ols(x, y).slope;
}

// Quadrature route for the upper partial moment integral_z^inf t^b f dt,
// independent of the closed form it cross-checks.  The integrand
// t^b * density(shape l) is proportional to a density of shape l + b, so the
// window and interior breakpoints are sized from that effective shape; sizing
// them from shape l alone truncates up to ~1e-7 of the mass when b is large
// and the rate is small.
double quad_tail_moment(const GammaArrival& g, unsigned b, double z) {
    const double shape_eff = static_cast<double>(g.shape) + static_cast<double>(b);
    const double mu = shape_eff / g.rate;
    const double sd = std::sqrt(shape_eff) / g.rate;
    const double hi = std::max(z, mu) + 16.0 * sd + 12.0 / g.rate;
    const auto integrand = [&](double t) {
        if (t <= z || t <= 0.0) return 0.0;
        return std::pow(t, static_cast<double>(b)) * gamma_analytics::density(g, t);
    };
    std::vector<double> pts{z};
    for (double p : {mu - 8 * sd, mu - 2 * sd, mu, mu + 2 * sd, mu + 8 * sd})
        if (p > z && p < hi) pts.push_back(p);
    pts.push_back(hi);
    quadrature::Options opt;
    opt.rel_tol = 1e-12;
    opt.max_intervals = 8192;
    return quadrature::integrate_segments(integrand, pts, opt);
}

struct Ctx {
    Tier tier;
    std::uint64_t seed;
    int workers;

    std::int64_t trials(std::int64_t full, std::int64_t quick) const {
        return tier == Tier::Full ? full : quick;
    }
};

// --- criterion bodies --------------------------------------------------------

CriterionResult c01_at_threshold_mean_a2(const Ctx& ctx) {
    CriterionResult res{1, "at-threshold mean cost, a=2"};
    auto cfg = sweep_config(Algorithm::MV1, {4096}, 2.0, 1, {Regime::At, 0.0}, {Regime::At, 0.0},
                            ctx.trials(10000, 10000), criterion_seed(ctx.seed, 1), ctx.workers);
    const auto est = experiments::estimate_mean_cost(cfg, 4096);
    const double lo = 0.5 * 0.95, hi = 0.5 * 1.05;
    res.pass = est.mean >= lo && est.mean <= hi;
    res.detail = "mean=" + fmt(est.mean) + " se=" + fmt(est.std_error) + " gate=[" + fmt(lo) +
                 ", " + fmt(hi) + "]";
    return res;
}

CriterionResult c02_at_threshold_mean_a4(const Ctx& ctx) {
    CriterionResult res{2, "at-threshold mean cost, a=4"};
    auto cfg = sweep_config(Algorithm::MV1, {4096}, 4.0, 1, {Regime::At, 0.0}, {Regime::At, 0.0},
                            ctx.trials(10000, 10000), criterion_seed(ctx.seed, 2), ctx.workers);
    const auto est = experiments::estimate_mean_cost(cfg, 4096);
    const double scaled = 4096.0 * est.mean;
    res.pass = scaled >= 0.85 && scaled <= 1.15;
    res.detail = "n*mean=" + fmt(scaled) + " se=" + fmt(4096.0 * est.std_error) +
                 " gate=[0.85, 1.15]";
    return res;
}

CriterionResult c03_closed_form_crosscheck(const Ctx& ctx) {
    CriterionResult res{3, "closed form vs Monte Carlo cross-check"};
    const std::int64_t trials = ctx.trials(100000, 20000);
    res.pass = true;
    int cell = 0;
    for (unsigned a : {2u, 4u}) {
        for (double eps : {0.0, 0.3}) {
            rng::RngSeed seed = criterion_seed(ctx.seed, 3);
            seed.stream += static_cast<std::uint64_t>(cell) * 10000000ull;
            const auto cc = experiments::crosscheck_exact_vs_mc(100, a, eps, trials, seed,
                                                                ctx.workers);
            if (!(std::fabs(cc.z) < 4.0)) res.pass = false;
            res.detail += (cell ? "  " : "") + std::string("z(a=") + std::to_string(a) +
                          ",eps=" + fmt(eps, "%.1f") + ")=" + fmt(cc.z, "%.2f");
            ++cell;
        }
    }
    res.detail += "  gate |z|<4";
    return res;
}

CriterionResult c04_combinatorial_identities(const Ctx&) {
    CriterionResult res{4, "exact combinatorial identities"};
    const auto suite = identities::run_default_suite(20, 30);
    res.pass = suite.ok();
    res.detail = std::to_string(suite.checks) + " checks";
    if (!suite.ok()) res.detail += ", first mismatch: " + suite.mismatches.front();
    return res;
}

CriterionResult c05_tail_moment_grid(const Ctx& ctx) {
    CriterionResult res{5, "tail moment closed form vs quadrature"};
    rng::StreamRng gen(criterion_seed(ctx.seed, 5));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::int64_t l = 1 + static_cast<std::int64_t>(gen.unit_open() * 20.0 - 1e-12);
        const unsigned b = static_cast<unsigned>(gen.unit_open() * 5.0 - 1e-12);
        const double rate = std::exp(gen.uniform(std::log(0.25), std::log(32.0)));
        const GammaArrival g{std::min<std::int64_t>(l, 20), rate};
        const double z = gen.uniform(0.0, 3.0 * gamma_analytics::mean(g));
        const double closed = gamma_analytics::tail_moment(g, std::min(b, 4u), z);
        const double quad = quad_tail_moment(g, std::min(b, 4u), z);
        const double rel = std::fabs(closed - quad) / std::max(std::fabs(quad), 1e-300);
        worst = std::max(worst, rel);
    }
    res.pass = worst < 1e-9;
    res.detail = "50 points, worst rel err=" + fmt(worst, "%.3g") + " gate<1e-9";
    return res;
}

CriterionResult c06_scaling_slopes_1d(const Ctx& ctx) {
    CriterionResult res{6, "1D cost scaling slopes"};
    const std::vector<std::int64_t> grid{256, 1024, 4096, 16384};
    const std::int64_t trials = ctx.trials(4000, 1000);
    const rng::RngSeed seed = criterion_seed(ctx.seed, 6);

    auto at = experiments::run_regime_suite(
        sweep_config(Algorithm::MV1, grid, 2.0, 1, {Regime::At, 0.0}, {Regime::At, 0.0}, trials,
                     seed, ctx.workers));
    rng::RngSeed seed_b = seed;
    seed_b.stream += 100000000ull;
    auto above = experiments::run_regime_suite(
        sweep_config(Algorithm::MV1, grid, 2.0, 1, {Regime::Above, 0.1}, {Regime::Above, 0.1},
                     trials, seed_b, ctx.workers));
    rng::RngSeed seed_c = seed;
    seed_c.stream += 200000000ull;
    auto repair = experiments::run_regime_suite(
        sweep_config(Algorithm::I1, grid, 2.0, 1, {Regime::Below, 0.1}, {Regime::Above, 0.1},
                     trials, seed_c, ctx.workers));

    res.pass = at.pass && above.pass && repair.pass;
    res.detail = "slope(at)=" + fmt(at.fit.slope, "%.4f") + " gate 0+-0.1; slope(above)=" +
                 fmt(above.fit.slope, "%.4f") + " gate 1+-0.1; slope(repair)=" +
                 fmt(repair.fit.slope, "%.4f") + " gate <=-0.9";
    if (!above.pass) {
        const double analytic = analytic_fixed_spacing_slope(grid, 1, 2, 0.1);
        res.detail += " | above-threshold note: noise-free slope over this grid is " +
                      fmt(analytic, "%.4f") +
                      " because the additive at-threshold baseline (~0.5) still biases the small-n"
                      " rows; the asymptotic exponent 1 needs n >> 3/eps^2";
    }
    if (!repair.pass) {
        const double norm_lo = static_cast<double>(repair.rows.front().n) *
                               repair.rows.front().mean_cost;
        const double norm_hi = static_cast<double>(repair.rows.back().n) *
                               repair.rows.back().mean_cost;
        res.detail += " | repair note: n*mean still climbs " + fmt(norm_lo, "%.1f") + " -> " +
                      fmt(norm_hi, "%.1f") +
                      " across this grid toward its ~50 plateau, which flattens the noise-free"
                      " slope to ~-0.907, within ~0.01 of the -0.9 edge; seeds land on either"
                      " side";
    }
    return res;
}

CriterionResult c07_scaling_slopes_2d(const Ctx& ctx) {
    CriterionResult res{7, "2D cost scaling slopes"};
    const std::vector<std::int64_t> grid{256, 1024, 4096, 16384}; // 4^4 .. 4^7
    const std::int64_t trials = ctx.trials(4000, 1000);
    const rng::RngSeed seed = criterion_seed(ctx.seed, 7);

    auto at = experiments::run_regime_suite(
        sweep_config(Algorithm::MVD, grid, 2.0, 2, {Regime::At, 0.0}, {Regime::At, 0.0}, trials,
                     seed, ctx.workers));
    rng::RngSeed seed_b = seed;
    seed_b.stream += 100000000ull;
    auto above = experiments::run_regime_suite(
        sweep_config(Algorithm::MVD, grid, 2.0, 2, {Regime::Above, 0.1}, {Regime::Above, 0.1},
                     trials, seed_b, ctx.workers));
    rng::RngSeed seed_c = seed;
    seed_c.stream += 200000000ull;
    auto repair = experiments::run_regime_suite(
        sweep_config(Algorithm::ID, grid, 2.0, 2, {Regime::Below, 0.1}, {Regime::Above, 0.1},
                     trials, seed_c, ctx.workers));

    res.pass = at.pass && above.pass && repair.pass;
    res.detail = "slope(at)=" + fmt(at.fit.slope, "%.4f") + " gate 0.5+-0.1; slope(above)=" +
                 fmt(above.fit.slope, "%.4f") + " gate 1+-0.1; slope(repair)=" +
                 fmt(repair.fit.slope, "%.4f") + " gate <=0.1";
    if (!above.pass) {
        const double analytic = analytic_fixed_spacing_slope(grid, 2, 2, 0.1);
        res.detail += " | above-threshold note: noise-free slope over this grid is " +
                      fmt(analytic, "%.4f") +
                      "; per axis the above-threshold excess eps^2*m/3 only overtakes the"
                      " at-threshold baseline 0.5 beyond m ~ 150, i.e. n ~ 22500";
    }
    if (!repair.pass) {
        const double c_lo = 0.5 * repair.rows.front().mean_cost;
        const double c_hi = 0.5 * repair.rows.back().mean_cost;
        res.detail += " | repair note: the repaired total on an m x m grid is 2*c(m), and c(m)"
                      " climbs " + fmt(c_lo, "%.1f") + " -> " + fmt(c_hi, "%.1f") +
                      " over m=16..128 -- the same per-axis normalization that levels off near 50"
                      " only past m ~ 4096 -- so a flat slope needs n ~ 1.7e7 grid points, far"
                      " beyond this grid";
    }
    return res;
}

CriterionResult c08_threshold_ordering(const Ctx& ctx) {
    CriterionResult res{8, "threshold cost ordering"};
    const std::int64_t n = 4096;
    const std::int64_t trials = ctx.trials(2000, 800);
    const rng::RngSeed seed = criterion_seed(ctx.seed, 8);

    auto below_cfg = sweep_config(Algorithm::I1, {n}, 2.0, 1, {Regime::Below, 0.1},
                                  {Regime::Above, 0.1}, trials, seed, ctx.workers);
    rng::RngSeed seed_b = seed;
    seed_b.stream += 100000000ull;
    auto at_cfg = sweep_config(Algorithm::MV1, {n}, 2.0, 1, {Regime::At, 0.0}, {Regime::At, 0.0},
                               trials, seed_b, ctx.workers);
    rng::RngSeed seed_c = seed;
    seed_c.stream += 200000000ull;
    auto above_cfg = sweep_config(Algorithm::MV1, {n}, 2.0, 1, {Regime::Above, 0.1},
                                  {Regime::Above, 0.1}, trials, seed_c, ctx.workers);

    const double below = experiments::estimate_mean_cost(below_cfg, n).mean;
    const double at = experiments::estimate_mean_cost(at_cfg, n).mean;
    const double above = experiments::estimate_mean_cost(above_cfg, n).mean;
    res.pass = 10.0 * below <= at && 10.0 * at <= above;
    res.detail = "below=" + fmt(below) + " at=" + fmt(at) + " above=" + fmt(above) +
                 " gate: 10*below<=at, 10*at<=above";
    return res;
}

CriterionResult c09_bound_normalization(const Ctx&) {
    CriterionResult res{9, "displacement bound normalization"};
    const double a = 2.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::int64_t n : {100, 1000, 10000}) {
        const double s = 0.9 / static_cast<double>(n);
        const double v = 1.1 / static_cast<double>(n);
        const auto under = gamma_analytics::undershoot_bound_sum(n, s, a);
        const auto over = gamma_analytics::overshoot_bound_sum(n, v, a);
        if (!under.in_regime || !over.in_regime) {
            res.pass = false;
            res.detail = "bound called outside its regime at n=" + std::to_string(n);
            return res;
        }
        const double norm = std::pow(static_cast<double>(n), a - 1.0) * (under.value + over.value);
        lo = std::min(lo, norm);
        hi = std::max(hi, norm);
        res.detail += "n=" + std::to_string(n) + ": " + fmt(norm) + "  ";
    }
    res.pass = hi / lo < 10.0;
    res.detail += "spread=" + fmt(hi / lo, "%.3f") + " gate<10";
    return res;
}

CriterionResult c10_layout_postconditions(const Ctx& ctx) {
    CriterionResult res{10, "layout postconditions on random deployments"};
    const std::int64_t cases = ctx.trials(1000, 300);
    const rng::RngSeed base = criterion_seed(ctx.seed, 10);
    std::int64_t failures = 0;
    std::string first;

    const auto record = [&](bool ok, std::int64_t t, const char* what) {
        if (!ok) {
            ++failures;
            if (first.empty()) first = std::string(what) + " at case " + std::to_string(t);
        }
    };

    for (std::int64_t t = 0; t < cases; ++t) {
        rng::RngSeed key{base.seed, base.stream + static_cast<std::uint64_t>(t)};
        rng::StreamRng gen(key, 777); // parameter substream, disjoint from sampling
        const double shape_pick = gen.unit_open();
        const double a = gen.uniform(0.3, 3.5);

        const auto check_report = [&](const algorithms::CostReport& rep, double s, double v) {
            record(algorithms::verify_ip(rep, s, v).ok, t, "gap band violated");
            for (const auto& axis : rep.final_axes)
                for (std::size_t i = 1; i < axis.size(); ++i)
                    record(axis[i - 1] < axis[i], t, "order not preserved");
            const auto costs = rep.per_move_costs();
            const double total = stats::pairwise_sum(costs);
            record(std::fabs(total - rep.total_cost) <=
                       1e-12 * std::max(1.0, std::fabs(rep.total_cost)),
                   t, "per-move costs do not sum to total");
        };

        if (shape_pick < 0.60) {
            const std::int64_t n = 2 + static_cast<std::int64_t>(gen.unit_open() * 498.999);
            const double s = gen.uniform(0.2, 1.4) / static_cast<double>(n);
            const double v = s * (1.0 + gen.uniform(0.0, 1.2));
            const auto dep = deployment::sample_1d(n, static_cast<double>(n), key);
            check_report(algorithms::mv1(dep, s, a), s, s);
            check_report(algorithms::i1(dep, {s, v, a}), s, v);
            // Equal bounds must reproduce the fixed-spacing layout bit for bit.
            const auto fixed = algorithms::mv1(dep, s, a);
            const auto repair = algorithms::i1(dep, {s, s, a});
            record(fixed.final_axes == repair.final_axes, t,
                   "equal-bounds repair differs from fixed spacing");
        } else {
            const int d = shape_pick < 0.85 ? 2 : 3;
            const std::int64_t m_max = d == 2 ? 22 : 7;
            const std::int64_t m = 2 + static_cast<std::int64_t>(gen.unit_open() *
                                                                 static_cast<double>(m_max - 1) *
                                                                 0.999);
            std::int64_t n = 1;
            for (int k = 0; k < d; ++k) n *= m;
            const double s = gen.uniform(0.2, 1.4) / static_cast<double>(m);
            const double v = s * (1.0 + gen.uniform(0.0, 1.2));
            const auto dep = deployment::sample_grid(n, d, key);
            check_report(algorithms::mvd(dep, s, a), s, s);
            check_report(algorithms::id(dep, {s, v, a}), s, v);
        }
    }
    res.pass = failures == 0;
    res.detail = std::to_string(cases) + " deployments";
    if (failures > 0) res.detail += ", " + std::to_string(failures) + " failures, first: " + first;
    return res;
}

CriterionResult c11_worker_determinism(const Ctx& ctx) {
    CriterionResult res{11, "worker-count determinism"};
    auto cfg = sweep_config(Algorithm::MV1, {256, 512, 1024}, 2.0, 1, {Regime::At, 0.0},
                            {Regime::At, 0.0}, 200, criterion_seed(ctx.seed, 11), 1);
    const auto one = experiments::run_regime_suite(cfg);
    cfg.workers = 4;
    const auto four = experiments::run_regime_suite(cfg);
    cfg.workers = 1;
    const auto rerun = experiments::run_regime_suite(cfg);

    cfg.workers = 1; // serialization never sees the worker count either way
    const std::string csv1 = experiments::sweep_csv(one);
    const std::string csv4 = experiments::sweep_csv(four);
    const std::string csv_rerun = experiments::sweep_csv(rerun);
    const std::string json1 = experiments::sweep_json(cfg, one).dump();
    cfg.workers = 4;
    const std::string json4 = experiments::sweep_json(cfg, four).dump();

    res.pass = csv1 == csv4 && csv1 == csv_rerun && json1 == json4;
    res.detail = res.pass ? "CSV and JSON byte-identical across 1 and 4 workers and across reruns"
                          : "artifacts differ across worker counts";
    return res;
}

} // namespace

Tier tier_from_name(const std::string& name) {
    if (name == "quick") return Tier::Quick;
    if (name == "full") return Tier::Full;
    throw std::invalid_argument("unknown tier: " + name);
}

const std::vector<int>& criterion_ids() {
    static const std::vector<int> ids{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    return ids;
}

CriterionResult run_criterion(int id, Tier tier, std::uint64_t seed, int workers) {
    const Ctx ctx{tier, seed, workers};
    const auto start = std::chrono::steady_clock::now();
    CriterionResult res;
    switch (id) {
        case 1: res = c01_at_threshold_mean_a2(ctx); break;
        case 2: res = c02_at_threshold_mean_a4(ctx); break;
        case 3: res = c03_closed_form_crosscheck(ctx); break;
        case 4: res = c04_combinatorial_identities(ctx); break;
        case 5: res = c05_tail_moment_grid(ctx); break;
        case 6: res = c06_scaling_slopes_1d(ctx); break;
        case 7: res = c07_scaling_slopes_2d(ctx); break;
        case 8: res = c08_threshold_ordering(ctx); break;
        case 9: res = c09_bound_normalization(ctx); break;
        case 10: res = c10_layout_postconditions(ctx); break;
        case 11: res = c11_worker_determinism(ctx); break;
        default: throw std::invalid_argument("unknown criterion id: " + std::to_string(id));
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::vector<CriterionResult> run_all(Tier tier, std::uint64_t seed, int workers) {
    std::vector<CriterionResult> out;
    for (int id : criterion_ids()) out.push_back(run_criterion(id, tier, seed, workers));
    return out;
}

int run_and_report(std::ostream& os, Tier tier, std::uint64_t seed, int workers, int only) {
    bool all_pass = true;
    const auto report = [&](const CriterionResult& r) {
        char line[64];
        std::snprintf(line, sizeof line, "[%s] %02d ", r.pass ? "PASS" : "FAIL", r.id);
        os << line << r.name << " - " << r.detail << " (" << fmt(r.seconds, "%.2f") << "s)\n";
        all_pass = all_pass && r.pass;
    };
    if (only != 0) {
        report(run_criterion(only, tier, seed, workers));
    } else {
        for (int id : criterion_ids()) report(run_criterion(id, tier, seed, workers));
    }
    os << (all_pass ? "acceptance: PASS\n" : "acceptance: FAIL\n");
    return all_pass ? 0 : 1;
}

} // namespace svip::acceptance
