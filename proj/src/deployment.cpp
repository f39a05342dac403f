#include "svip/deployment.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace svip::deployment {

namespace {

void write_position(std::ostream& os, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf << '\n';
}

} // namespace

std::int64_t GridDeployment::sensor_count() const {
    std::int64_t count = 1;
    for (int k = 0; k < d; ++k) count *= axis_size();
    return axes.empty() ? 0 : count;
}

bool perfect_power_root(std::int64_t n, int d, std::int64_t* root) {
    if (n < 1 || d < 1) return false;
    std::int64_t r = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / d)));
    // The float estimate can be off by one either way; settle it in integers.
    for (std::int64_t cand = std::max<std::int64_t>(1, r - 1); cand <= r + 1; ++cand) {
        std::int64_t p = 1;
        bool overflow = false;
        for (int k = 0; k < d; ++k) {
            if (p > n / cand + 1) { overflow = true; break; }
            p *= cand;
        }
        if (!overflow && p == n) {
            if (root) *root = cand;
            return true;
        }
    }
    return false;
}

Deployment1D sample_1d(std::int64_t n, double rate, rng::RngSeed seed) {
    if (n < 1) throw std::invalid_argument("sample_1d: n must be >= 1");
    if (!(rate > 0.0)) throw std::invalid_argument("sample_1d: rate must be positive");
    rng::StreamRng gen(seed);
    Deployment1D dep;
    dep.rate = rate;
    dep.positions.resize(static_cast<std::size_t>(n));
    double x = 0.0;
    for (auto& p : dep.positions) {
        x += gen.exponential(rate);
        p = x;
    }
    return dep;
}

GridDeployment sample_grid(std::int64_t n, int d, rng::RngSeed seed) {
    if (d < 2) throw std::invalid_argument("sample_grid: d must be >= 2");
    std::int64_t m = 0;
    if (!perfect_power_root(n, d, &m))
        throw std::invalid_argument("sample_grid: n must be a perfect d-th power");
    GridDeployment dep;
    dep.d = d;
    dep.axis_rate = static_cast<double>(m);
    dep.axes.resize(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        rng::StreamRng gen(seed, static_cast<std::uint64_t>(k) + 1);
        auto& axis = dep.axes[static_cast<std::size_t>(k)];
        axis.resize(static_cast<std::size_t>(m));
        double x = 0.0;
        for (auto& p : axis) {
            x += gen.exponential(dep.axis_rate);
            p = x;
        }
    }
    return dep;
}

void write_text(const Deployment1D& dep, std::ostream& os) {
    char head[96];
    std::snprintf(head, sizeof head, "# deployment1d n=%lld rate=%.17g\n",
                  static_cast<long long>(dep.size()), dep.rate);
    os << head;
    for (double p : dep.positions) write_position(os, p);
}

void write_text(const GridDeployment& dep, std::ostream& os) {
    char head[96];
    std::snprintf(head, sizeof head, "# grid d=%d m=%lld rate=%.17g\n", dep.d,
                  static_cast<long long>(dep.axis_size()), dep.axis_rate);
    os << head;
    for (int k = 0; k < dep.d; ++k) {
        os << "# axis " << k << '\n';
        for (double p : dep.axes[static_cast<std::size_t>(k)]) write_position(os, p);
    }
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
    throw std::runtime_error("deployment parse error: " + what);
}

} // namespace

Deployment1D read_1d(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) parse_fail("missing header");
    long long n = 0;
    double rate = 0.0;
    if (std::sscanf(line.c_str(), "# deployment1d n=%lld rate=%lg", &n, &rate) != 2)
        parse_fail("bad 1d header: " + line);
    Deployment1D dep;
    dep.rate = rate;
    dep.positions.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        if (!std::getline(is, line)) parse_fail("truncated position list");
        dep.positions.push_back(std::strtod(line.c_str(), nullptr));
    }
    return dep;
}

GridDeployment read_grid(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) parse_fail("missing header");
    int d = 0;
    long long m = 0;
    double rate = 0.0;
    if (std::sscanf(line.c_str(), "# grid d=%d m=%lld rate=%lg", &d, &m, &rate) != 3)
        parse_fail("bad grid header: " + line);
    GridDeployment dep;
    dep.d = d;
    dep.axis_rate = rate;
    dep.axes.resize(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        if (!std::getline(is, line) || line.rfind("# axis", 0) != 0) parse_fail("missing axis block");
        auto& axis = dep.axes[static_cast<std::size_t>(k)];
        axis.reserve(static_cast<std::size_t>(m));
        for (long long i = 0; i < m; ++i) {
            if (!std::getline(is, line)) parse_fail("truncated axis block");
            axis.push_back(std::strtod(line.c_str(), nullptr));
        }
    }
    return dep;
}

} // namespace svip::deployment
