#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace svip::rng {

// Substream address:  `seed` names the whole experiment, `stream` one trial
// within it.  Downstream code may add a third level (one substream per grid
// axis) through the StreamRng constructor.
struct RngSeed {
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
};

namespace detail {

// splitmix64 finalizer; a well-mixed 64-bit permutation step.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace detail

// One independent generator per (seed, stream, substream) triple.  The key is
// derived by chained splitmix64 mixing, and all floating-point draws below are
// written out explicitly so the byte-for-byte output of a run depends only on
// this header, never on the standard library's distribution internals.
class StreamRng {
public:
    explicit StreamRng(RngSeed key, std::uint64_t substream = 0)
        : engine_(detail::mix(detail::mix(detail::mix(key.seed) ^ key.stream) ^ substream)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on (0, 1]: 53 random bits, then a half-ulp shift away from zero
    // so the logarithm below is always finite.
    double unit_open() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit_open(); }

    // Inverse-CDF exponential draw.
    double exponential(double rate) { return -std::log(unit_open()) / rate; }

private:
    std::mt19937_64 engine_;
};

} // namespace svip::rng
