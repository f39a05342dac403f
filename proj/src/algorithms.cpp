#include "svip/algorithms.hpp"

#include <cmath>

namespace svip::algorithms {

namespace {

double move_cost(double displacement, double a) {
    const double m = std::fabs(displacement);
    if (a == 2.0) return m * m;
    if (a == 1.0) return m;
    return std::pow(m, a);
}

// Shared 1D kernels operating on one position axis.

struct AxisRun {
    std::vector<double> final_pos;
    std::vector<double> disp;
    double cost = 0.0;
    std::int64_t moved = 0;
};

AxisRun run_fixed_spacing(std::span<const double> x, double s, double a) {
    AxisRun out;
    const std::size_t n = x.size();
    out.final_pos.resize(n);
    out.disp.resize(n);
    if (n == 0) return out;
    out.final_pos[0] = x[0];
    out.disp[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        out.final_pos[i] = out.final_pos[i - 1] + s;
        const double d = out.final_pos[i] - x[i];
        out.disp[i] = d;
        if (d != 0.0) {
            out.cost += move_cost(d, a);
            ++out.moved;
        }
    }
    return out;
}

AxisRun run_gap_repair(std::span<const double> x, const InterferencePolicy& p) {
    AxisRun out;
    const std::size_t n = x.size();
    out.final_pos.resize(n);
    out.disp.resize(n);
    if (n == 0) return out;
    out.final_pos[0] = x[0];
    out.disp[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double prev = out.final_pos[i - 1];
        const double gap = x[i] - prev;
        double pos = x[i];
        if (gap < p.s) pos = prev + p.s;
        else if (gap > p.v) pos = prev + p.v;
        out.final_pos[i] = pos;
        const double d = pos - x[i];
        out.disp[i] = d;
        if (d != 0.0) {
            out.cost += move_cost(d, p.a);
            ++out.moved;
        }
    }
    return out;
}

CostReport report_1d(Algorithm alg, const deployment::Deployment1D& dep, double s, double v,
                     double a, AxisRun&& run) {
    CostReport rep;
    rep.algorithm = alg;
    rep.n = dep.size();
    rep.d = 1;
    rep.s = s;
    rep.v = v;
    rep.a = a;
    rep.hyperplane_weight = 1;
    rep.final_axes.push_back(std::move(run.final_pos));
    rep.axis_displacements.push_back(std::move(run.disp));
    rep.total_cost = run.cost;
    rep.moved_count = run.moved;
    return rep;
}

template <typename AxisFn>
CostReport report_grid(Algorithm alg, const deployment::GridDeployment& dep, double s, double v,
                       double a, AxisFn&& run_axis) {
    CostReport rep;
    rep.algorithm = alg;
    rep.n = dep.sensor_count();
    rep.d = dep.d;
    rep.s = s;
    rep.v = v;
    rep.a = a;
    const std::int64_t m = dep.axis_size();
    std::int64_t weight = 1;
    for (int k = 0; k + 1 < dep.d; ++k) weight *= m;
    rep.hyperplane_weight = weight;
    for (const auto& axis : dep.axes) {
        AxisRun run = run_axis(std::span<const double>(axis));
        rep.total_cost += static_cast<double>(weight) * run.cost;
        rep.moved_count += weight * run.moved;
        rep.final_axes.push_back(std::move(run.final_pos));
        rep.axis_displacements.push_back(std::move(run.disp));
    }
    return rep;
}

} // namespace

std::string algorithm_name(Algorithm alg) {
    switch (alg) {
        case Algorithm::MV1: return "mv1";
        case Algorithm::I1: return "i1";
        case Algorithm::MVD: return "mvd";
        case Algorithm::ID: return "id";
    }
    return "mv1";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "mv1") return Algorithm::MV1;
    if (name == "i1") return Algorithm::I1;
    if (name == "mvd") return Algorithm::MVD;
    if (name == "id") return Algorithm::ID;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::vector<double> CostReport::per_move_costs() const {
    std::vector<double> out;
    for (const auto& axis : axis_displacements)
        for (double d : axis)
            for (std::int64_t w = 0; w < hyperplane_weight; ++w) out.push_back(move_cost(d, a));
    return out;
}

CostReport mv1(const deployment::Deployment1D& dep, double s, double a) {
    InterferencePolicy{s, s, a}.validate();
    return report_1d(Algorithm::MV1, dep, s, s, a, run_fixed_spacing(dep.positions, s, a));
}

CostReport i1(const deployment::Deployment1D& dep, const InterferencePolicy& policy) {
    policy.validate();
    return report_1d(Algorithm::I1, dep, policy.s, policy.v, policy.a,
                     run_gap_repair(dep.positions, policy));
}

CostReport mvd(const deployment::GridDeployment& dep, double s, double a) {
    InterferencePolicy{s, s, a}.validate();
    return report_grid(Algorithm::MVD, dep, s, s, a, [&](std::span<const double> axis) {
        return run_fixed_spacing(axis, s, a);
    });
}

CostReport id(const deployment::GridDeployment& dep, const InterferencePolicy& policy) {
    policy.validate();
    return report_grid(Algorithm::ID, dep, policy.s, policy.v, policy.a,
                       [&](std::span<const double> axis) { return run_gap_repair(axis, policy); });
}

IpCheck verify_ip(std::span<const double> positions, double s, double v) {
    constexpr double kSlack = 1e-12;
    for (std::size_t i = 1; i < positions.size(); ++i) {
        const double gap = positions[i] - positions[i - 1];
        if (gap < s - kSlack || gap > v + kSlack)
            return {false, 0, static_cast<std::int64_t>(i), gap};
    }
    return {};
}

IpCheck verify_ip(const CostReport& report, double s, double v) {
    for (std::size_t k = 0; k < report.final_axes.size(); ++k) {
        IpCheck check = verify_ip(report.final_axes[k], s, v);
        if (!check.ok) {
            check.axis = static_cast<int>(k);
            return check;
        }
    }
    return {};
}

} // namespace svip::algorithms
