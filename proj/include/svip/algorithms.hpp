#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "svip/deployment.hpp"

namespace svip::algorithms {

enum class Algorithm { MV1, I1, MVD, ID };

std::string algorithm_name(Algorithm alg);
Algorithm algorithm_from_name(const std::string& name);

// Gap policy: every consecutive gap of the final layout must land in [s, v],
// and |move|^a is what each displacement costs.
struct InterferencePolicy {
    double s = 0.0;
    double v = 0.0;
    double a = 1.0;

    void validate() const {
        if (!(s > 0.0) || !(v >= s)) throw std::invalid_argument("policy: requires 0 < s <= v");
        if (!(a > 0.0)) throw std::invalid_argument("policy: requires a > 0");
    }
};

// Outcome of one algorithm run.  Displacements and final positions are kept
// per axis; in 1D there is a single axis.  On a grid every axis displacement
// is shared by hyperplane_weight = m^(d-1) sensors, so
//   total_cost = hyperplane_weight * sum_axes sum_i |disp[i]|^a
// and moved_count counts moved sensors with the same weight.
struct CostReport {
    Algorithm algorithm = Algorithm::MV1;
    std::int64_t n = 0;
    int d = 1;
    double s = 0.0;
    double v = 0.0;
    double a = 1.0;
    std::int64_t hyperplane_weight = 1;
    std::vector<std::vector<double>> final_axes;
    std::vector<std::vector<double>> axis_displacements;
    double total_cost = 0.0;
    std::int64_t moved_count = 0;

    // Weight-expanded per-sensor cost contributions; sums back to total_cost.
    std::vector<double> per_move_costs() const;
};

// Fixed spacing: sensor i goes to X_1 + (i-1)s, accumulated as repeated
// addition of s so that the equal-spacing run of the gap-repair sweep below
// reproduces these positions bit for bit.
CostReport mv1(const deployment::Deployment1D& dep, double s, double a);

// Left-to-right gap repair against the *updated* predecessor: a gap below s
// pulls the sensor to prev + s, a gap above v caps it at prev + v, anything
// inside [s, v] is left alone.
CostReport i1(const deployment::Deployment1D& dep, const InterferencePolicy& policy);

// Per-axis application of the 1D rules to a grid deployment.
CostReport mvd(const deployment::GridDeployment& dep, double s, double a);
CostReport id(const deployment::GridDeployment& dep, const InterferencePolicy& policy);

// First gap violation found, if any.  Gaps are accepted with a 1e-12 absolute
// slack so representable-rounding at the band edges does not fail a layout
// that was constructed to sit exactly on them.
struct IpCheck {
    bool ok = true;
    int axis = -1;
    std::int64_t index = -1; // right endpoint of the offending gap
    double gap = 0.0;
};

IpCheck verify_ip(std::span<const double> positions, double s, double v);
IpCheck verify_ip(const CostReport& report, double s, double v);

} // namespace svip::algorithms
