#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "svip/rng.hpp"

namespace svip::deployment {

// Sorted arrival positions X_1 < X_2 < ... < X_n of a Poisson process on the
// half-line, built as a running sum of exponential gaps.
struct Deployment1D {
    double rate = 1.0;
    std::vector<double> positions;

    std::int64_t size() const { return static_cast<std::int64_t>(positions.size()); }
};

// d independent coordinate processes of m = n^(1/d) arrivals each at rate m;
// sensor (i_1, ..., i_d) sits at (axis[0][i_1], ..., axis[d-1][i_d]).
struct GridDeployment {
    int d = 2;
    double axis_rate = 1.0;
    std::vector<std::vector<double>> axes;

    std::int64_t axis_size() const {
        return axes.empty() ? 0 : static_cast<std::int64_t>(axes.front().size());
    }
    std::int64_t sensor_count() const;
};

// Exact integer d-th root probe: true iff n == root^d, with the root returned.
bool perfect_power_root(std::int64_t n, int d, std::int64_t* root);

Deployment1D sample_1d(std::int64_t n, double rate, rng::RngSeed seed);

// n must be a perfect d-th power; axis k draws from substream k+1 of `seed`.
GridDeployment sample_grid(std::int64_t n, int d, rng::RngSeed seed);

// Line-oriented text form: '#' header line, then one position per line (grid:
// one '# axis k' block per coordinate).  Round-trips bit-exactly.
void write_text(const Deployment1D& dep, std::ostream& os);
void write_text(const GridDeployment& dep, std::ostream& os);
Deployment1D read_1d(std::istream& is);
GridDeployment read_grid(std::istream& is);

} // namespace svip::deployment
