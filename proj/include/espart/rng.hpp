#pragma once

#include <cstdint>

namespace espart {

// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so identical seeds give identical artifacts across runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound); bound > 0
    std::uint64_t below(std::uint64_t bound) {
        // multiply-shift; bias is negligible for the bounds used here and the
        // result is fully deterministic
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace espart
