#include "svip/combinatorics.hpp"

namespace svip::combinatorics {

BigInt factorial(unsigned n) {
    BigInt out = 1;
    for (unsigned k = 2; k <= n; ++k) out *= k;
    return out;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (unsigned j = 1; j <= k; ++j) {
        out *= n - k + j;
        out /= j; // exact at every step: out is C(n-k+j, j)
    }
    return out;
}

BigRat rising_factorial(const BigRat& x, unsigned k) {
    BigRat out = 1;
    for (unsigned j = 0; j < k; ++j) out *= x + j;
    return out;
}

StirlingFirstTable::StirlingFirstTable(unsigned max_n) : max_n_(max_n) {
    rows_.resize(max_n + 1);
    rows_[0] = {BigInt(1)};
    for (unsigned n = 1; n <= max_n; ++n) {
        rows_[n].assign(n + 1, BigInt(0));
        for (unsigned k = 1; k <= n; ++k) {
            rows_[n][k] = rows_[n - 1][k - 1];
            if (k <= n - 1) rows_[n][k] += BigInt(n - 1) * rows_[n - 1][k];
        }
    }
}

const BigInt& StirlingFirstTable::at(unsigned n, unsigned k) const {
    if (n > max_n_) throw std::out_of_range("StirlingFirstTable: n exceeds table size");
    if (k > n) throw std::domain_error("StirlingFirstTable: requires k <= n");
    return rows_[n][k];
}

const std::vector<BigInt>& StirlingFirstTable::row(unsigned n) const {
    if (n > max_n_) throw std::out_of_range("StirlingFirstTable: n exceeds table size");
    return rows_[n];
}

EulerianSecondTable::EulerianSecondTable(unsigned max_n) : max_n_(max_n) {
    rows_.resize(max_n + 1);
    rows_[0] = {BigInt(1)};
    for (unsigned n = 1; n <= max_n; ++n) {
        rows_[n].assign(n + 1, BigInt(0));
        for (unsigned k = 0; k < n; ++k) {
            rows_[n][k] = BigInt(k + 1) * rows_[n - 1][k];
            if (k >= 1) rows_[n][k] += BigInt(2 * n - 1 - k) * rows_[n - 1][k - 1];
        }
        // E2(n,n) stays 0 for n >= 1.
    }
}

const BigInt& EulerianSecondTable::at(unsigned n, unsigned k) const {
    if (n > max_n_) throw std::out_of_range("EulerianSecondTable: n exceeds table size");
    if (k > n) throw std::domain_error("EulerianSecondTable: requires k <= n");
    return rows_[n][k];
}

const std::vector<BigInt>& EulerianSecondTable::row(unsigned n) const {
    if (n > max_n_) throw std::out_of_range("EulerianSecondTable: n exceeds table size");
    return rows_[n];
}

const StirlingFirstTable& shared_stirling_first() {
    static const StirlingFirstTable table(64);
    return table;
}

const EulerianSecondTable& shared_eulerian_second() {
    static const EulerianSecondTable table(64);
    return table;
}

BigInt stirling_first(unsigned n, unsigned k) { return shared_stirling_first().at(n, k); }

BigInt eulerian_second(unsigned n, unsigned k) { return shared_eulerian_second().at(n, k); }

BigInt alternating_stirling_sum(unsigned a, unsigned l1) {
    if (a % 2 != 0) throw std::domain_error("alternating_stirling_sum: a must be even");
    const StirlingFirstTable local(a);
    BigInt acc = 0;
    for (unsigned j = 0; j <= a; ++j) {
        if (j < l1) continue; // s(j, j-l1) with negative second index is 0
        BigInt term = binomial(a, j) * local.at(j, j - l1);
        if (j % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

BigInt alternating_stirling_sum_closed_form(unsigned a, unsigned l1) {
    if (a % 2 != 0) throw std::domain_error("alternating_stirling_sum_closed_form: a must be even");
    if (2 * l1 > a)
        throw std::domain_error("alternating_stirling_sum_closed_form: requires 2*l1 <= a");
    if (2 * l1 < a) return 0;
    BigInt out = factorial(a) / factorial(a / 2);
    return out >> (a / 2); // divide by 2^(a/2), exact
}

BigRat bernoulli_plus(unsigned j) {
    // B-_m from sum_{i=0}^{m} C(m+1,i) B-_i = 0, then flip the sign at m = 1.
    std::vector<BigRat> b(j + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= j; ++m) {
        BigRat acc = 0;
        for (unsigned i = 0; i < m; ++i) acc += BigRat(binomial(m + 1, i)) * b[i];
        b[m] = -acc / BigRat(m + 1);
    }
    if (j == 1) return BigRat(1, 2);
    return b[j];
}

namespace {

BigInt power_sum_direct(std::uint64_t m, unsigned f) {
    BigInt acc = 0;
    for (std::uint64_t k = 1; k <= m; ++k) acc += boost::multiprecision::pow(BigInt(k), f);
    return acc;
}

BigInt power_sum_closed_form(std::uint64_t m, unsigned f) {
    // Faulhaber: sum_{k=1}^{m} k^f = 1/(f+1) sum_{j=0}^{f} C(f+1,j) B+_j m^(f+1-j).
    BigRat acc = 0;
    const BigRat mr = BigRat(BigInt(m));
    for (unsigned j = 0; j <= f; ++j) {
        acc += BigRat(binomial(f + 1, j)) * bernoulli_plus(j) * rat_pow(mr, f + 1 - j);
    }
    acc /= BigRat(f + 1);
    if (denominator(acc) != 1)
        throw std::logic_error("power_sum: closed form did not reduce to an integer");
    return numerator(acc);
}

} // namespace

BigInt power_sum(std::uint64_t m, unsigned f, PowerSumRoute route) {
    switch (route) {
        case PowerSumRoute::Direct: return power_sum_direct(m, f);
        case PowerSumRoute::ClosedForm: return power_sum_closed_form(m, f);
        case PowerSumRoute::Auto: break;
    }
    return m > 100000 ? power_sum_closed_form(m, f) : power_sum_direct(m, f);
}

} // namespace svip::combinatorics
