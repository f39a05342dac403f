#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "svip/bigint.hpp"

namespace svip::combinatorics {

BigInt factorial(unsigned n);

// binomial(n, k) = 0 when k > n, so polynomial identities written in terms of
// binomials can be evaluated without special-casing short rows.
BigInt binomial(unsigned n, unsigned k);

// Rising factorial x(x+1)...(x+k-1) over exact rationals; empty product is 1.
BigRat rising_factorial(const BigRat& x, unsigned k);

// Unsigned Stirling numbers of the first kind, triangular table filled by the
// recurrence s(n+1,k) = s(n,k-1) + n*s(n,k).  Row n holds the coefficients of
// the rising factorial: x(x+1)...(x+n-1) = sum_k s(n,k) x^k.
class StirlingFirstTable {
public:
    explicit StirlingFirstTable(unsigned max_n = 64);

    // s(n,k); requires k <= n <= max_n().
    const BigInt& at(unsigned n, unsigned k) const;
    unsigned max_n() const { return max_n_; }
    const std::vector<BigInt>& row(unsigned n) const;

private:
    unsigned max_n_;
    std::vector<std::vector<BigInt>> rows_;
};

// Second-order Eulerian numbers, triangular table filled by the recurrence
// E2(n,k) = (k+1) E2(n-1,k) + (2n-1-k) E2(n-1,k-1).  Row n sums to
// (2n)!/(n! 2^n), the number of matchings of 2n points into ordered pairs.
class EulerianSecondTable {
public:
    explicit EulerianSecondTable(unsigned max_n = 64);

    // E2(n,k); requires k <= n <= max_n().
    const BigInt& at(unsigned n, unsigned k) const;
    unsigned max_n() const { return max_n_; }
    const std::vector<BigInt>& row(unsigned n) const;

private:
    unsigned max_n_;
    std::vector<std::vector<BigInt>> rows_;
};

// Shared read-only tables sized for the identity suites (n <= 64).  Built on
// first use and immutable afterwards, so concurrent reads are safe.
const StirlingFirstTable& shared_stirling_first();
const EulerianSecondTable& shared_eulerian_second();

// s(n,k) / E2(n,k) through the shared tables; n must stay within their size.
BigInt stirling_first(unsigned n, unsigned k);
BigInt eulerian_second(unsigned n, unsigned k);

// a-th forward difference at zero: sum_j C(a,j) (-1)^(a-j) f(j).
template <typename F>
BigRat finite_difference_sum(unsigned a, F&& f) {
    BigRat acc = 0;
    for (unsigned j = 0; j <= a; ++j) {
        BigRat term = BigRat(binomial(a, j)) * f(j);
        if ((a - j) % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

// Alternating Stirling sum sum_j C(a,j) (-1)^j s(j, j-l1) for even a.  It
// vanishes while 2*l1 < a and equals a!/((a/2)! 2^(a/2)) at 2*l1 = a; these
// are the coefficients behind the closed-form displacement costs.
BigInt alternating_stirling_sum(unsigned a, unsigned l1);

// The closed form the sum collapses to: 0 below the diagonal, the perfect
// matching count a!/((a/2)! 2^(a/2)) on it.  Only the range 2*l1 <= a is
// covered by the closed form; other inputs are rejected.
BigInt alternating_stirling_sum_closed_form(unsigned a, unsigned l1);

// Bernoulli number B+_j (convention with B+_1 = +1/2), exact.
BigRat bernoulli_plus(unsigned j);

enum class PowerSumRoute {
    Auto,       // direct below the crossover, closed form above
    Direct,     // sum_{k=1}^{m} k^f term by term
    ClosedForm, // Faulhaber polynomial via Bernoulli numbers
};

// sum_{k=1}^{m} k^f, exact.  Both routes agree exactly; Auto switches to the
// closed form once m > 10^5 so large grids stay cheap.
BigInt power_sum(std::uint64_t m, unsigned f, PowerSumRoute route = PowerSumRoute::Auto);

} // namespace svip::combinatorics
