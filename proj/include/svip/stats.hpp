#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace svip::stats {

// Fixed-tree pairwise summation: split at the midpoint, recurse.  The
// reduction order depends only on the length, so a result computed from a
// given value vector is bit-identical no matter how many workers filled it.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double acc = 0.0;
        for (double x : xs) acc += x;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct MeanStdError {
    double mean = 0.0;
    double std_error = 0.0;
};

// Sample mean and its standard error (sample std / sqrt(count)), both reduced
// pairwise for determinism.
inline MeanStdError mean_std_error(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean_std_error: empty sample");
    MeanStdError out;
    out.mean = pairwise_sum(xs) / static_cast<double>(xs.size());
    if (xs.size() == 1) return out;
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(xs.size() - 1);
    out.std_error = std::sqrt(var / static_cast<double>(xs.size()));
    return out;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_std_error = 0.0;
};

// Ordinary least squares of y on x with residual-based slope uncertainty.
inline LineFit ols(std::span<const double> x, std::span<const double> y) {
    const std::size_t k = x.size();
    if (k != y.size() || k < 2) throw std::invalid_argument("ols: needs matched samples, k >= 2");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("ols: degenerate x values");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (k > 2) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            ssr += r * r;
        }
        fit.slope_std_error = std::sqrt(std::max(ssr, 0.0) / static_cast<double>(k - 2) / sxx);
    }
    return fit;
}

// One-sample Kolmogorov-Smirnov statistic against a CDF.  Sorts a copy.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

// Two-sample Kolmogorov-Smirnov statistic.  Sorts copies.
inline double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i;
        else ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

// Asymptotic Kolmogorov critical value at significance alpha for one sample
// of size n (sqrt(-ln(alpha/2)/2) / sqrt(n)).
inline double ks_critical(double alpha, std::size_t n) {
    return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

// Two-sample version: c(alpha) * sqrt((n+m)/(n*m)).
inline double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m) {
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

} // namespace svip::stats
