#pragma once

#include <functional>
#include <string>
#include <vector>

#include "svip/bigint.hpp"

namespace svip::identities {

struct SuiteResult {
    int checks = 0;
    std::vector<std::string> mismatches;

    bool ok() const { return mismatches.empty(); }
};

// Table accessors let the caller decide where values come from (and lets the
// debug path serve deliberately wrong ones to prove mismatches are caught).
using TableFn = std::function<BigInt(unsigned n, unsigned k)>;

// Exact identity checks, all integer equalities:
//   - Stirling rows sum to m!            (m <= 2*max_m, capped at 60)
//   - Eulerian rows sum to (2m)!/(m! 2^m) (m <= max_m)
//   - s(m, m-p) = sum_l E2(p,l) C(m+l, 2p) (m <= max_m, 0 <= p <= m)
//   - alternating sum sum_j C(a,j)(-1)^j s(j,j-l1) collapses to its closed
//     form (even a <= max_a, 2*l1 <= a)
//   - a-th difference of x -> C(x+l, 2*l1) at 0 is 0 below the diagonal
//     2*l1 = a and 1 on it (even a <= max_a, small l)
SuiteResult run_suite(unsigned max_a, unsigned max_m, const TableFn& stirling,
                      const TableFn& eulerian);

// Suite over the shared tables; `corrupt_one_value` perturbs one served
// Stirling entry so the run must report a mismatch.
SuiteResult run_default_suite(unsigned max_a, unsigned max_m, bool corrupt_one_value = false);

} // namespace svip::identities
