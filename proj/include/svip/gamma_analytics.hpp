#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>

#include "svip/bigint.hpp"
#include "svip/combinatorics.hpp"

namespace svip::gamma_analytics {

// The l-th arrival of a Poisson process with the given rate: a Gamma(l, rate)
// variable, density rate * exp(-rate*t) * (rate*t)^(l-1) / (l-1)!.
struct GammaArrival {
    std::int64_t shape = 1; // arrival index l >= 1
    double rate = 1.0;      // process intensity > 0

    void validate() const {
        if (shape < 1) throw std::domain_error("GammaArrival: shape must be >= 1");
        if (!(rate > 0.0)) throw std::domain_error("GammaArrival: rate must be positive");
    }
};

// Density at t; t < 0 is a domain error.  Evaluated in log space so large
// shapes neither overflow the factorial nor underflow prematurely.
double density(const GammaArrival& g, double t);

// E[X] = shape / rate.
double mean(const GammaArrival& g);

// Upper partial moment  integral_z^inf t^b f(t) dt  for integer b >= 0, via
// the closed form
//   (l-1+b)! / ((l-1)! rate^b) * e^(-rate z) sum_{j=0}^{l-1+b} (rate z)^j / j!
// whose trailing factor is a Poisson CDF, summed outward from its largest
// term for stability.  z = 0 recovers the raw moment E[X^b].
double tail_moment(const GammaArrival& g, unsigned b, double z);

// E[((c - X)^+)^a]  =  integral_0^c (c - t)^a f(t) dt,  real a > 0, c >= 0.
// Always computed by adaptive quadrature (the exponent need not be an
// integer).
double truncated_lower_moment(const GammaArrival& g, double a, double c);

// E[((X - c)^+)^a]  =  integral_c^inf (t - c)^a f(t) dt,  real a > 0, c >= 0.
// Integer a expands binomially into tail_moment calls; fractional a falls
// back to adaptive quadrature on a finite window chosen from the density's
// decay.
double truncated_upper_moment(const GammaArrival& g, double a, double c);

// Cost-bound sums over a whole deployment.  `value` is
//   sum_{l=1}^{n} (n/l) * E[((s*l - X_l)^+)^a]   (undershoot), resp.
//   sum_{l=1}^{n} (n/l) * E[((X_l - v*l)^+)^a]   (overshoot),
// with X_l ~ Gamma(l, n).  Both decay like n^(1-a) in their intended regime;
// `in_regime` records whether the spacing actually sits on the proper side of
// the mean gap 1/n (s*n < 1, resp. v*n > 1).  Out-of-regime values are still
// returned — they are just no longer meaningful bounds.
struct BoundSum {
    double value = 0.0;
    bool in_regime = true;
};

BoundSum undershoot_bound_sum(std::int64_t n, double s, double a);
BoundSum overshoot_bound_sum(std::int64_t n, double v, double a);

// Exact-rational polynomial behind the expected cost of the fixed-spacing
// 1D algorithm at spacing (1 + eps1)/n and even exponent a:
//
//   E[cost] = (1/n^a) sum_e coeff[e] * sum_{k=1}^{n-1} k^e
//
// where coeff[e] collects C(a,j) (1+eps1)^(a-j) (-1)^j s(j, j-(a-e)) over j.
// Only exponents with a nonzero coefficient are stored.
class ExactCostExpansion {
public:
    static ExactCostExpansion build(unsigned a, const BigRat& eps1);

    unsigned a() const { return a_; }
    const BigRat& eps1() const { return eps1_; }
    const std::map<unsigned, BigRat>& coefficients() const { return coeff_; }

private:
    unsigned a_ = 0;
    BigRat eps1_ = 0;
    std::map<unsigned, BigRat> coeff_;
};

// Exact expected total displacement cost of the fixed-spacing 1D algorithm on
// n arrivals at rate n, spacing (1+eps1)/n, even exponent a.  The rational
// form is exact; the double overload converts at the end.  Both power-sum
// routes must and do agree exactly.
BigRat exact_mv1_cost_rational(std::int64_t n, unsigned a, const BigRat& eps1,
                               combinatorics::PowerSumRoute route = combinatorics::PowerSumRoute::Auto);
double exact_mv1_cost(std::int64_t n, unsigned a, double eps1,
                      combinatorics::PowerSumRoute route = combinatorics::PowerSumRoute::Auto);

// Leading coefficient of the at-threshold cost:  a! / (2^(a/2) (a/2 + 1)!).
// E[cost] -> this * n^(1 - a/2) as n grows with eps1 = 0.
BigRat at_threshold_leading_constant(unsigned a);

} // namespace svip::gamma_analytics
