#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace girgnav {

/// SplitMix64 finalizer. Used to expand seeds and to derive substreams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive an independent substream seed from a parent seed and a list of tags.
/// The result depends only on the arguments, never on call order.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> tags);

/// Named substream tags.
namespace stream {
inline constexpr std::uint64_t count = 0x636f756e74ULL;
inline constexpr std::uint64_t positions = 0x706f73ULL;
inline constexpr std::uint64_t weights = 0x776569676874ULL;
inline constexpr std::uint64_t edges = 0x6564676573ULL;
inline constexpr std::uint64_t trial = 0x747269616cULL;
inline constexpr std::uint64_t pairs = 0x7061697273ULL;
inline constexpr std::uint64_t relax = 0x72656c6178ULL;
inline constexpr std::uint64_t radii = 0x7261646969ULL;
inline constexpr std::uint64_t angles = 0x616e676c6573ULL;
} // namespace stream

/// xoshiro256** 1.0 (Blackman & Vigna), seeded through SplitMix64.
/// Satisfies UniformRandomBitGenerator. All distributions used by the
/// library are implemented on top of it so that results do not depend on
/// the standard library's distribution implementations.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform();
    /// Uniform in (0, 1].
    double uniform_open_closed();
    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    /// Poisson-distributed count with the given mean (>= 0).
    std::uint64_t poisson(double mean);
    /// Number of failures before the first success of a Bernoulli(p) sequence, p in (0, 1].
    std::uint64_t geometric_skip(double p);

private:
    std::array<std::uint64_t, 4> s_;
};

} // namespace girgnav
