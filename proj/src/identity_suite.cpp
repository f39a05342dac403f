#include "svip/identity_suite.hpp"

#include <algorithm>

#include "svip/combinatorics.hpp"

namespace svip::identities {

namespace comb = svip::combinatorics;

namespace {

void check(SuiteResult& out, bool ok, const std::string& label) {
    ++out.checks;
    if (!ok) out.mismatches.push_back(label);
}

} // namespace

SuiteResult run_suite(unsigned max_a, unsigned max_m, const TableFn& stirling,
                      const TableFn& eulerian) {
    SuiteResult out;

    const unsigned row_limit = std::min(2 * max_m, 60u);
    for (unsigned m = 0; m <= row_limit; ++m) {
        BigInt sum = 0;
        for (unsigned k = 0; k <= m; ++k) sum += stirling(m, k);
        check(out, sum == comb::factorial(m), "stirling row sum, m=" + std::to_string(m));
    }

    for (unsigned m = 0; m <= max_m; ++m) {
        BigInt sum = 0;
        for (unsigned k = 0; k <= m; ++k) sum += eulerian(m, k);
        BigInt expected = comb::factorial(2 * m) / comb::factorial(m);
        expected >>= m; // divide by 2^m, exact
        check(out, sum == expected, "eulerian row sum, m=" + std::to_string(m));
    }

    for (unsigned m = 0; m <= max_m; ++m) {
        for (unsigned p = 0; p <= m; ++p) {
            BigInt rhs = 0;
            for (unsigned l = 0; l <= p; ++l)
                rhs += eulerian(p, l) * comb::binomial(m + l, 2 * p);
            check(out, stirling(m, m - p) == rhs,
                  "stirling-eulerian bridge, m=" + std::to_string(m) + " p=" + std::to_string(p));
        }
    }

    for (unsigned a = 2; a <= max_a; a += 2) {
        for (unsigned l1 = 0; 2 * l1 <= a; ++l1) {
            check(out,
                  comb::alternating_stirling_sum(a, l1) ==
                      comb::alternating_stirling_sum_closed_form(a, l1),
                  "alternating stirling sum, a=" + std::to_string(a) + " l1=" + std::to_string(l1));
        }
    }

    for (unsigned a = 2; a <= max_a; a += 2) {
        for (unsigned l = 0; l <= 4; ++l) {
            for (unsigned l1 = 0; 2 * l1 <= a; ++l1) {
                const BigRat diff = comb::finite_difference_sum(
                    a, [&](unsigned j) { return BigRat(comb::binomial(j + l, 2 * l1)); });
                const BigRat expected = 2 * l1 == a ? 1 : 0;
                check(out, diff == expected,
                      "binomial difference, a=" + std::to_string(a) + " l=" + std::to_string(l) +
                          " l1=" + std::to_string(l1));
            }
        }
    }

    return out;
}

SuiteResult run_default_suite(unsigned max_a, unsigned max_m, bool corrupt_one_value) {
    TableFn stirling = [corrupt_one_value](unsigned n, unsigned k) {
        BigInt value = comb::stirling_first(n, k);
        if (corrupt_one_value && n == 9 && k == 4) value += 1;
        return value;
    };
    TableFn eulerian = [](unsigned n, unsigned k) { return comb::eulerian_second(n, k); };
    return run_suite(max_a, max_m, stirling, eulerian);
}

} // namespace svip::identities
