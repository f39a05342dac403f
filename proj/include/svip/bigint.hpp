#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace svip {

// Exact integer/rational arithmetic used by the combinatorial layer and the
// closed-form cost evaluator.  Everything downstream converts to double only
// at the very end.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigRat& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& i) { return i.convert_to<double>(); }

// base^exp by repeated squaring; exp is small in practice but this keeps the
// cost logarithmic anyway.
inline BigRat rat_pow(BigRat base, unsigned exp) {
    BigRat out = 1;
    while (exp != 0) {
        if (exp & 1u) out *= base;
        base *= base;
        exp >>= 1u;
    }
    return out;
}

} // namespace svip
