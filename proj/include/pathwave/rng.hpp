#ifndef PATHWAVE_RNG_HPP
#define PATHWAVE_RNG_HPP

#include <cmath>
#include <cstdint>

namespace pathwave {

// splitmix64 mixing step (Steele, Lea & Flood 2014). Used as a keyed,
// counter-based generator: every draw is addressed by an explicit key, so
// streams never depend on draw order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

// Uniform in (0, 1].
inline double uniform_from_key(std::uint64_t key) {
    return (static_cast<double>(splitmix64(key) >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal via Box-Muller on two keyed uniforms.
inline double normal_from_key(std::uint64_t key) {
    const double u1 = uniform_from_key(mix_key(key, 0x6b79));
    const double u2 = uniform_from_key(mix_key(key, 0x6d75));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace pathwave

#endif
