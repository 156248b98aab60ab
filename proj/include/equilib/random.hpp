#pragma once

#include <cstdint>

namespace equilib {

/// Deterministic PRNG (splitmix64). <random> distributions are
/// implementation-defined; corpus output and the property suites need
/// identical seeds to give identical bytes on every platform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Uniform in [lo, hi], inclusive.
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

} // namespace equilib
