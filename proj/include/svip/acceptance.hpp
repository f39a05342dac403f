#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace svip::acceptance {

// `Quick` trims Monte Carlo trial counts for a smoke pass; `Full` runs the
// suite at its reference scale.  Thresholds never change between tiers.
enum class Tier { Quick, Full };

Tier tier_from_name(const std::string& name);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

const std::vector<int>& criterion_ids();

// Run one criterion.  `seed` feeds every random draw inside it; verdicts are
// expected to be stable across seeds because each gate leaves multiple
// standard errors of margin.
CriterionResult run_criterion(int id, Tier tier, std::uint64_t seed, int workers);

std::vector<CriterionResult> run_all(Tier tier, std::uint64_t seed, int workers);

// Print one [PASS]/[FAIL] line per criterion (all of them, or just `only` if
// nonzero) and return the process exit code: 0 iff everything passed.
int run_and_report(std::ostream& os, Tier tier, std::uint64_t seed, int workers, int only = 0);

} // namespace svip::acceptance
