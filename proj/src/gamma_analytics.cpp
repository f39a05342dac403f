#include "svip/gamma_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "svip/quadrature.hpp"

namespace svip::gamma_analytics {

namespace {

// log of sum_{j=0}^{k} e^(-lambda) lambda^j / j!, accumulated outward from the
// largest retained term so the result keeps full relative precision even when
// the total underflows the linear scale.
double log_poisson_cdf(std::int64_t k, double lambda) {
    if (k < 0) return -std::numeric_limits<double>::infinity();
    if (lambda == 0.0) return 0.0;
    const std::int64_t j0 = std::min<std::int64_t>(k, static_cast<std::int64_t>(lambda));
    const double log_p0 = -lambda + static_cast<double>(j0) * std::log(lambda) -
                          std::lgamma(static_cast<double>(j0) + 1.0);
    double acc = 1.0;
    double w = 1.0;
    for (std::int64_t j = j0; j >= 1; --j) {
        w *= static_cast<double>(j) / lambda; // p(j-1) / p(j)
        if (w < 1e-20) break;
        acc += w;
    }
    w = 1.0;
    for (std::int64_t j = j0 + 1; j <= k; ++j) {
        w *= lambda / static_cast<double>(j); // p(j) / p(j-1)
        if (w < 1e-20) break;
        acc += w;
    }
    return log_p0 + std::log(acc);
}

double log_density(const GammaArrival& g, double t) {
    // t > 0 assumed.
    const double l = static_cast<double>(g.shape);
    return std::log(g.rate) - g.rate * t + (l - 1.0) * std::log(g.rate * t) - std::lgamma(l);
}

// Ascending, deduplicated breakpoints clipped to [lo, hi]; used to seed the
// adaptive quadrature with the density's known structure so a narrow peak in
// a wide window cannot be stepped over.
std::vector<double> clip_breakpoints(std::initializer_list<double> candidates, double lo, double hi) {
    std::vector<double> pts{lo, hi};
    for (double c : candidates)
        if (c > lo && c < hi) pts.push_back(c);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace

double density(const GammaArrival& g, double t) {
    g.validate();
    if (t < 0.0) throw std::domain_error("density: t must be >= 0");
    if (t == 0.0) return g.shape == 1 ? g.rate : 0.0;
    return std::exp(log_density(g, t));
}

double mean(const GammaArrival& g) {
    g.validate();
    return static_cast<double>(g.shape) / g.rate;
}

double tail_moment(const GammaArrival& g, unsigned b, double z) {
    g.validate();
    if (z < 0.0) throw std::domain_error("tail_moment: z must be >= 0");
    const double l = static_cast<double>(g.shape);
    const double log_ratio = std::lgamma(l + b) - std::lgamma(l) - b * std::log(g.rate);
    return std::exp(log_ratio + log_poisson_cdf(g.shape - 1 + b, g.rate * z));
}

double truncated_lower_moment(const GammaArrival& g, double a, double c) {
    g.validate();
    if (!(a > 0.0)) throw std::domain_error("truncated_lower_moment: a must be positive");
    if (c < 0.0) throw std::domain_error("truncated_lower_moment: c must be >= 0");
    if (c == 0.0) return 0.0;
    const double mu = mean(g);
    const double sd = std::sqrt(static_cast<double>(g.shape)) / g.rate;
    const auto integrand = [&](double t) {
        if (t <= 0.0 || t >= c) return 0.0;
        return std::exp(a * std::log(c - t) + log_density(g, t));
    };
    const auto pts = clip_breakpoints(
        {mu - 8 * sd, mu - 2 * sd, mu, mu + 2 * sd, mu + 8 * sd, 0.5 * c}, 0.0, c);
    return quadrature::integrate_segments(integrand, pts);
}

double truncated_upper_moment(const GammaArrival& g, double a, double c) {
    g.validate();
    if (!(a > 0.0)) throw std::domain_error("truncated_upper_moment: a must be positive");
    if (c < 0.0) throw std::domain_error("truncated_upper_moment: c must be >= 0");

    const double a_round = std::nearbyint(a);
    if (a_round == a && a_round <= 64.0) {
        // (t - c)^a expands binomially; each piece is a closed-form upper
        // partial moment.
        const unsigned ai = static_cast<unsigned>(a_round);
        double acc = 0.0;
        for (unsigned k = 0; k <= ai; ++k) {
            double term = to_double(BigRat(combinatorics::binomial(ai, k))) *
                          std::pow(-c, static_cast<double>(ai - k)) * tail_moment(g, k, c);
            acc += term;
        }
        return std::max(acc, 0.0); // guard the cancellation tail
    }

    const double mu = mean(g);
    const double sd = std::sqrt(static_cast<double>(g.shape)) / g.rate;
    const auto integrand = [&](double t) {
        if (t <= c || t <= 0.0) return 0.0;
        return std::exp(a * std::log(t - c) + log_density(g, t));
    };

    // Truncate the infinite tail where the integrand has fallen 18 orders of
    // magnitude below its peak.
    double hi = std::max(c + 20.0 * (sd + 1.0 / g.rate), mu + 12.0 * sd);
    const auto log_integrand = [&](double t) {
        if (t <= c || t <= 0.0) return -std::numeric_limits<double>::infinity();
        return a * std::log(t - c) + log_density(g, t);
    };
    double peak_log = -std::numeric_limits<double>::infinity();
    for (double probe : {c + 0.5 * sd, c + sd, mu, mu + sd, std::max(mu, c) + sd})
        peak_log = std::max(peak_log, log_integrand(probe));
    for (int i = 0; i < 200 && log_integrand(hi) > peak_log - 42.0; ++i)
        hi = c + 2.0 * (hi - c);

    const auto pts = clip_breakpoints(
        {c + 0.25 * sd, c + sd, mu - 8 * sd, mu - 2 * sd, mu, mu + 2 * sd, mu + 8 * sd}, c, hi);
    return quadrature::integrate_segments(integrand, pts);
}

namespace {

BoundSum bound_sum(std::int64_t n, double spacing, double a, bool lower) {
    if (n < 1) throw std::domain_error("bound_sum: n must be >= 1");
    if (!(a > 0.0)) throw std::domain_error("bound_sum: a must be positive");
    if (!(spacing >= 0.0)) throw std::domain_error("bound_sum: spacing must be >= 0");
    BoundSum out;
    out.in_regime = lower ? spacing * static_cast<double>(n) < 1.0
                          : spacing * static_cast<double>(n) > 1.0;
    const double rate = static_cast<double>(n);
    for (std::int64_t l = 1; l <= n; ++l) {
        const GammaArrival g{l, rate};
        const double c = spacing * static_cast<double>(l);
        const double m = lower ? truncated_lower_moment(g, a, c) : truncated_upper_moment(g, a, c);
        out.value += (rate / static_cast<double>(l)) * m;
    }
    return out;
}

} // namespace

BoundSum undershoot_bound_sum(std::int64_t n, double s, double a) {
    return bound_sum(n, s, a, /*lower=*/true);
}

BoundSum overshoot_bound_sum(std::int64_t n, double v, double a) {
    return bound_sum(n, v, a, /*lower=*/false);
}

ExactCostExpansion ExactCostExpansion::build(unsigned a, const BigRat& eps1) {
    if (a == 0 || a % 2 != 0) throw std::domain_error("ExactCostExpansion: a must be even and positive");
    ExactCostExpansion out;
    out.a_ = a;
    out.eps1_ = eps1;
    const combinatorics::StirlingFirstTable table(a);
    const BigRat one_plus = BigRat(1) + eps1;
    for (unsigned l1 = 0; l1 <= a; ++l1) {
        BigRat coeff = 0;
        for (unsigned j = l1; j <= a; ++j) {
            BigRat term = BigRat(combinatorics::binomial(a, j)) * rat_pow(one_plus, a - j) *
                          BigRat(table.at(j, j - l1));
            if (j % 2 == 1) term = -term;
            coeff += term;
        }
        if (coeff != 0) out.coeff_[a - l1] = coeff;
    }
    return out;
}

BigRat exact_mv1_cost_rational(std::int64_t n, unsigned a, const BigRat& eps1,
                               combinatorics::PowerSumRoute route) {
    if (n < 1) throw std::domain_error("exact_mv1_cost: n must be >= 1");
    const auto expansion = ExactCostExpansion::build(a, eps1);
    BigRat acc = 0;
    for (const auto& [e, coeff] : expansion.coefficients()) {
        acc += coeff * BigRat(combinatorics::power_sum(static_cast<std::uint64_t>(n - 1), e, route));
    }
    return acc / rat_pow(BigRat(BigInt(n)), a);
}

double exact_mv1_cost(std::int64_t n, unsigned a, double eps1, combinatorics::PowerSumRoute route) {
    return to_double(exact_mv1_cost_rational(n, a, BigRat(eps1), route));
}

BigRat at_threshold_leading_constant(unsigned a) {
    if (a == 0 || a % 2 != 0)
        throw std::domain_error("at_threshold_leading_constant: a must be even and positive");
    using combinatorics::factorial;
    return BigRat(factorial(a), factorial(a / 2 + 1) << (a / 2));
}

} // namespace svip::gamma_analytics
