#pragma once
// Seeded random draws with a fixed engine-to-value mapping. The standard
// distributions are implementation-defined, so reproducible outputs across
// toolchains need the mapping spelled out here.

#include <cstdint>
#include <random>

namespace concord {

// splitmix64 step; also used to spread weak user seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent stream seed from a base seed and two task indices.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64(s);
    s += a;
    h ^= splitmix64(s);
    s += b;
    h ^= splitmix64(s);
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1), 53 random bits.
    double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

    // Uniform in (0, 1]; never returns zero.
    double positive_unit() { return 1.0 - canonical(); }

    bool bernoulli(double p) { return canonical() < p; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    std::uint64_t word() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace concord
