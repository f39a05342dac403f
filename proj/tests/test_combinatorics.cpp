#include <cstdint>
#include <vector>

#include <doctest.h>

#include "svip/combinatorics.hpp"

using svip::BigInt;
using svip::BigRat;
namespace comb = svip::combinatorics;

namespace {

// Independent route to the Stirling table: expand x(x+1)...(x+n-1) by direct
// polynomial convolution and read off the coefficients.
std::vector<BigInt> rising_factorial_coefficients(unsigned n) {
    std::vector<BigInt> poly{BigInt(1)}; // constant polynomial 1
    for (unsigned j = 0; j < n; ++j) {
        // poly *= (x + j)
        std::vector<BigInt> next(poly.size() + 1, BigInt(0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * j;
            next[k + 1] += poly[k];
        }
        poly = std::move(next);
    }
    return poly;
}

// Iterated-subtraction forward difference: build the difference table row by
// row instead of using the binomial formula.
BigRat difference_by_table(unsigned a, const std::vector<BigRat>& values) {
    std::vector<BigRat> row = values;
    for (unsigned step = 0; step < a; ++step) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
        row.pop_back();
    }
    return row.at(0);
}

} // namespace

TEST_CASE("stirling table matches polynomial expansion of the rising factorial") {
    comb::StirlingFirstTable table(25);
    for (unsigned n = 0; n <= 25; ++n) {
        const auto coeffs = rising_factorial_coefficients(n);
        REQUIRE(coeffs.size() == n + 1);
        for (unsigned k = 0; k <= n; ++k) CHECK(table.at(n, k) == coeffs[k]);
    }
}

TEST_CASE("stirling spot values and row sums") {
    CHECK(comb::stirling_first(4, 2) == 11);
    CHECK(comb::stirling_first(5, 1) == 24);
    CHECK(comb::stirling_first(6, 3) == 225);
    CHECK(comb::stirling_first(3, 3) == 1);
    // Row n sums to n! (set x = 1 in the rising factorial).
    const auto& table = comb::shared_stirling_first();
    for (unsigned n = 0; n <= 30; ++n) {
        BigInt sum = 0;
        for (const BigInt& v : table.row(n)) sum += v;
        CHECK(sum == comb::factorial(n));
    }
}

TEST_CASE("stirling table rejects out-of-range queries") {
    comb::StirlingFirstTable table(10);
    CHECK_THROWS_AS(table.at(11, 0), std::out_of_range);
    CHECK_THROWS_AS(table.at(5, 6), std::domain_error);
}

TEST_CASE("second-order eulerian rows and sums") {
    const auto& table = comb::shared_eulerian_second();
    CHECK(table.at(0, 0) == 1);
    CHECK(table.at(1, 0) == 1);
    CHECK(table.at(1, 1) == 0);
    // Row 2: {1, 2, 0}; row 3: {1, 8, 6, 0}.
    CHECK(table.at(2, 0) == 1);
    CHECK(table.at(2, 1) == 2);
    CHECK(table.at(2, 2) == 0);
    CHECK(table.at(3, 0) == 1);
    CHECK(table.at(3, 1) == 8);
    CHECK(table.at(3, 2) == 6);
    CHECK(table.at(3, 3) == 0);
    // Row m sums to (2m)!/(m! 2^m), the count of perfect matchings of 2m points.
    for (unsigned m = 0; m <= 20; ++m) {
        BigInt sum = 0;
        for (const BigInt& v : table.row(m)) sum += v;
        BigInt expect = comb::factorial(2 * m) / comb::factorial(m);
        expect >>= m;
        CHECK(sum == expect);
    }
}

TEST_CASE("bridge identity: stirling diagonals from eulerian rows") {
    // s(m, m-p) = sum_l E2(p, l) C(m+l, 2p), checked against the polynomial
    // oracle rather than the table under test.
    for (unsigned m = 0; m <= 12; ++m) {
        const auto coeffs = rising_factorial_coefficients(m);
        for (unsigned p = 0; p <= m; ++p) {
            BigInt rhs = 0;
            for (unsigned l = 0; l <= p; ++l)
                rhs += comb::eulerian_second(p, l) * comb::binomial(m + l, 2 * p);
            CHECK(coeffs[m - p] == rhs);
        }
    }
}

TEST_CASE("finite difference sum equals iterated subtraction") {
    for (unsigned a : {1u, 2u, 3u, 4u, 6u, 9u}) {
        // f(j) = j^3 - 2 j + 7, tabulated at 0..a.
        std::vector<BigRat> vals;
        for (unsigned j = 0; j <= a; ++j)
            vals.push_back(BigRat(BigInt(j) * j * j) - BigRat(2 * j) + 7);
        const BigRat direct = comb::finite_difference_sum(
            a, [](unsigned j) { return BigRat(BigInt(j) * j * j) - BigRat(2 * j) + 7; });
        CHECK(direct == difference_by_table(a, vals));
    }
    // The a-th difference kills polynomials of degree < a and maps x^a to a!.
    CHECK(comb::finite_difference_sum(4, [](unsigned j) { return BigRat(BigInt(j) * j * j); }) == 0);
    CHECK(comb::finite_difference_sum(
              3, [](unsigned j) { return BigRat(BigInt(j) * j * j); }) == BigRat(6));
}

TEST_CASE("alternating stirling sums collapse to the matching count") {
    CHECK(comb::alternating_stirling_sum(2, 1) == 1);
    CHECK(comb::alternating_stirling_sum(4, 2) == 3);
    CHECK(comb::alternating_stirling_sum(6, 3) == 15);
    CHECK(comb::alternating_stirling_sum(2, 0) == 0);
    CHECK(comb::alternating_stirling_sum(4, 0) == 0);
    CHECK(comb::alternating_stirling_sum(4, 1) == 0);
    CHECK(comb::alternating_stirling_sum(6, 2) == 0);
    for (unsigned a = 2; a <= 16; a += 2)
        for (unsigned l1 = 0; 2 * l1 <= a; ++l1)
            CHECK(comb::alternating_stirling_sum(a, l1) ==
                  comb::alternating_stirling_sum_closed_form(a, l1));
    CHECK_THROWS_AS(comb::alternating_stirling_sum(3, 1), std::domain_error);
    CHECK_THROWS_AS(comb::alternating_stirling_sum_closed_form(4, 3), std::domain_error);
}

TEST_CASE("bernoulli numbers, plus convention") {
    CHECK(comb::bernoulli_plus(0) == BigRat(1));
    CHECK(comb::bernoulli_plus(1) == BigRat(1, 2));
    CHECK(comb::bernoulli_plus(2) == BigRat(1, 6));
    CHECK(comb::bernoulli_plus(3) == BigRat(0));
    CHECK(comb::bernoulli_plus(4) == BigRat(-1, 30));
    CHECK(comb::bernoulli_plus(12) == BigRat(-691, 2730));
}

TEST_CASE("power sums: both routes agree exactly") {
    using comb::PowerSumRoute;
    for (std::uint64_t m = 1; m <= 50; ++m)
        for (unsigned f = 0; f <= 8; ++f)
            CHECK(comb::power_sum(m, f, PowerSumRoute::Direct) ==
                  comb::power_sum(m, f, PowerSumRoute::ClosedForm));
    for (std::uint64_t m : {99ull, 1234ull})
        for (unsigned f = 0; f <= 6; ++f)
            CHECK(comb::power_sum(m, f, PowerSumRoute::Direct) ==
                  comb::power_sum(m, f, PowerSumRoute::ClosedForm));
}

TEST_CASE("power sum frozen values") {
    CHECK(comb::power_sum(10, 1) == 55);
    CHECK(comb::power_sum(10, 2) == 385);
    CHECK(comb::power_sum(100, 3) == 25502500);
    CHECK(comb::power_sum(0, 5) == 0);
    // Auto route must survive the closed-form switchover.
    CHECK(comb::power_sum(200000, 1) == BigInt(200000) * 200001 / 2);
}

TEST_CASE("rising factorial over rationals") {
    for (unsigned n = 0; n <= 10; ++n)
        CHECK(comb::rising_factorial(BigRat(1), n) == BigRat(comb::factorial(n)));
    CHECK(comb::rising_factorial(BigRat(1, 2), 3) == BigRat(15, 8));
    CHECK(comb::rising_factorial(BigRat(-3), 2) == BigRat(6));
}

TEST_CASE("binomial edge behavior") {
    CHECK(comb::binomial(0, 0) == 1);
    CHECK(comb::binomial(5, 2) == 10);
    CHECK(comb::binomial(52, 5) == 2598960);
    CHECK(comb::binomial(4, 7) == 0);
    CHECK(comb::binomial(7, 0) == 1);
    CHECK(comb::binomial(7, 7) == 1);
}
